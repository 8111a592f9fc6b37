//! Points of the surface `r^2 (x + y + z) = x y z` and its rational parametrization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{denominator_lcm, Field, Rational};
use crate::error::GeometryError;

/// Homogeneous point `[r : x : y : z]`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct SurfacePoint<F: Field> {
    pub r: F,
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: Field> SurfacePoint<F> {
    pub fn new(r: F, x: F, y: F, z: F) -> Self {
        SurfacePoint { r, x, y, z }
    }

    pub fn coords(&self) -> [&F; 4] {
        [&self.r, &self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn on_surface(&self) -> bool {
        let lhs = self.r.square().mul(&self.x.add(&self.y).add(&self.z));
        lhs == self.x.mul(&self.y).mul(&self.z)
    }

    /// The plane cubic coordinates `[x : y : z]`.
    pub fn cubic(&self) -> [F; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl SurfacePoint<Rational> {
    /// Coprime integers with the first nonzero coordinate positive.
    pub fn canonical(&self) -> SurfacePoint<Rational> {
        let c = canonical_projective(&[
            self.r.clone(),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]);
        SurfacePoint::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }
}

impl<F: Field> fmt::Display for SurfacePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {} : {}]", self.r, self.x, self.y, self.z)
    }
}

impl<F: Field> fmt::Debug for SurfacePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Scale a projective rational vector to coprime integers whose first
/// nonzero entry is positive. The zero vector is returned unchanged.
pub fn canonical_projective(v: &[Rational]) -> Vec<Rational> {
    let den = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
}

/// `[u : v : w] -> [v w (u - v) : v (u v + w^2) : w^2 (u - v) : u v (u - v)]`.
pub fn param_surface<F: Field>(u: &F, v: &F, w: &F) -> Result<SurfacePoint<F>, GeometryError> {
    let umv = u.sub(v);
    let w2 = w.square();
    let pt = SurfacePoint::new(
        v.mul(w).mul(&umv),
        v.mul(&u.mul(v).add(&w2)),
        w2.mul(&umv),
        u.mul(v).mul(&umv),
    );
    if pt.is_zero() {
        return Err(GeometryError::Degenerate);
    }
    Ok(pt)
}

/// `[r : x : y : z] -> [y z : r^2 : y r]`.
pub fn inverse_param<F: Field>(pt: &SurfacePoint<F>) -> Result<[F; 3], GeometryError> {
    let out = [pt.y.mul(&pt.z), pt.r.square(), pt.y.mul(&pt.r)];
    if out.iter().all(|c| c.is_zero()) {
        return Err(GeometryError::Degenerate);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RationalFunction;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn parametrization_examples() {
        let pt = param_surface(&q(2), &q(1), &q(2)).unwrap();
        assert_eq!(pt.canonical(), SurfacePoint::new(q(1), q(3), q(2), q(1)));
        assert_eq!(
            canonical_projective(&inverse_param(&pt.canonical()).unwrap()),
            vec![q(2), q(1), q(2)]
        );
        assert!(param_surface(&q(1), &q(0), &q(0)).is_err());
    }

    #[test]
    fn the_curve_c() {
        type Qs = RationalFunction<Rational>;
        let s = Qs::s();
        let pt = param_surface(&s, &Qs::one(), &Qs::one()).unwrap();
        let sm1 = Qs::parse("s - 1").unwrap();
        assert_eq!(pt.r, sm1);
        assert_eq!(pt.x, Qs::parse("s + 1").unwrap());
        assert_eq!(pt.y, sm1);
        assert_eq!(pt.z, Qs::parse("s^2 - s").unwrap());
        assert!(pt.on_surface());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn roundtrip(u in -40i64..40, v in -40i64..40, w in -40i64..40, d in 1i64..9) {
            let (u, v, w) = (Rational::new(u, d), q(v), q(w));
            prop_assume!(!v.is_zero() && !w.is_zero() && u != v);
            let pt = param_surface(&u, &v, &w).unwrap();
            prop_assert!(pt.on_surface());
            let back = inverse_param(&pt).unwrap();
            prop_assert_eq!(canonical_projective(&back), canonical_projective(&[u, v, w]));
        }
    }
}
