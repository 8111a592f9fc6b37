//! The elliptic fibration of the inradius-one surface and its sections.
//!
//! Every function takes the base parameter `s` as an element of the working
//! field, so one definition serves `Q(s)`, `Q(i)(s)`, a specialization
//! `s = s0` over `Q`, and prime fields.

use crate::arith::{Field, GaussianRational, Rational};
use crate::elliptic::{CurvePoint, WeierstrassCurve};
use crate::error::GeometryError;
use crate::ratfunc::RationalFunction;

pub type Qs = RationalFunction<Rational>;
pub type Gs = RationalFunction<GaussianRational>;

fn c<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

/// `t = (s - 1) / (s (s + 1))`, the slope of the plane containing the fiber.
pub fn plane_parameter<F: Field>(s: &F) -> Option<F> {
    s.sub(&c(1)).div(&s.mul(&s.add(&c(1))))
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with `a2 = s^2 (s+1)^2 - 12 (s-1)^2`,
/// `a4 = 48 (s-1)^4`, `a6 = -64 (s-1)^6`.
pub fn family_curve_at<F: Field>(s: &F) -> WeierstrassCurve<F> {
    let sm1 = s.sub(&c(1));
    let sm1_2 = sm1.square();
    let ss1 = s.mul(&s.add(&c(1)));
    let a2 = ss1.square().sub(&c::<F>(12).mul(&sm1_2));
    let a4 = c::<F>(48).mul(&sm1_2.square());
    let a6 = c::<F>(-64).mul(&sm1_2.square().mul(&sm1_2));
    WeierstrassCurve::new(a2, a4, a6)
}

/// The family over `F(s)`.
pub fn family_curve<F: Field>() -> WeierstrassCurve<RationalFunction<F>> {
    family_curve_at(&RationalFunction::s())
}

/// `P = (4 (s-1)^2, 4 s (s+1) (s-1)^2)`, of order 3.
pub fn section_p_at<F: Field>(s: &F) -> CurvePoint<F> {
    let sm1_2 = s.sub(&c(1)).square();
    let x = c::<F>(4).mul(&sm1_2);
    let y = x.mul(s).mul(&s.add(&c(1)));
    CurvePoint::new(x, y)
}

/// `R = (8 - 8s, 8 s^2 - 8)`, the image of the curve `C`.
pub fn section_r_at<F: Field>(s: &F) -> CurvePoint<F> {
    let x = c::<F>(8).sub(&c::<F>(8).mul(s));
    let y = c::<F>(8).mul(&s.square()).sub(&c(8));
    CurvePoint::new(x, y)
}

/// `Q = (0, 8 i (s-1)^3)` where `i` is a square root of `-1` in `F`.
pub fn section_q_at<F: Field>(s: &F, i: &F) -> CurvePoint<F> {
    let sm1 = s.sub(&c(1));
    CurvePoint::new(F::zero(), c::<F>(8).mul(i).mul(&sm1.square().mul(&sm1)))
}

/// The named sections `O, P, Q, R`.
#[derive(Clone, Debug)]
pub struct FamilySections {
    pub o: CurvePoint<Qs>,
    pub p: CurvePoint<Qs>,
    pub r: CurvePoint<Qs>,
    /// Only defined over `Q(i)(s)`.
    pub q: CurvePoint<Gs>,
}

pub fn family_sections() -> FamilySections {
    let s = Qs::s();
    FamilySections {
        o: CurvePoint::Infinity,
        p: section_p_at(&s),
        r: section_r_at(&s),
        q: section_q_at(&Gs::s(), &Gs::constant(GaussianRational::i())),
    }
}

/// Embed `Q(s)` into `Q(i)(s)`.
pub fn to_gaussian(f: &Qs) -> Gs {
    f.map(|c| GaussianRational::new(c.clone(), Rational::from(0)))
}

/// Plane cubic point `[x : y : z]` to Weierstrass coordinates:
/// `p = -4 (s-1)^2 (x+y) / z`, `q = 4 (s-1)^2 s (s+1) (x-y) / z`.
/// The flex `[1 : -1 : 0]` goes to the origin.
pub fn to_weierstrass<F: Field>(s: &F, xyz: &[F; 3]) -> Result<CurvePoint<F>, GeometryError> {
    let [x, y, z] = xyz;
    let sum = x.add(y);
    let Some(zinv) = z.inv() else {
        return if sum.is_zero() && !x.is_zero() {
            Ok(CurvePoint::Infinity)
        } else {
            Err(GeometryError::NotOnSurface)
        };
    };
    let k = c::<F>(4).mul(&s.sub(&c(1)).square()).mul(&zinv);
    let p = k.mul(&sum).neg();
    let q = k.mul(s).mul(&s.add(&c(1))).mul(&x.sub(y));
    Ok(CurvePoint::new(p, q))
}

/// Inverse of [`to_weierstrass`]: `[-s(s+1) p + q : -s(s+1) p - q : 8 (s-1)^2 s (s+1)]`.
pub fn from_weierstrass<F: Field>(s: &F, pt: &CurvePoint<F>) -> [F; 3] {
    match pt {
        CurvePoint::Infinity => [F::one(), c(-1), F::zero()],
        CurvePoint::Affine { x: p, y: q } => {
            let ss1 = s.mul(&s.add(&c(1)));
            let base = ss1.mul(p).neg();
            [
                base.add(q),
                base.sub(q),
                c::<F>(8).mul(&s.sub(&c(1)).square()).mul(&ss1),
            ]
        }
    }
}

/// Translation by `P` acts on the plane cubic as `[x : y : z] -> [z : x : y]`.
pub fn cycle<F: Clone>(xyz: &[F; 3]) -> [F; 3] {
    [xyz[2].clone(), xyz[0].clone(), xyz[1].clone()]
}

/// Negation acts as `[x : y : z] -> [y : x : z]`.
pub fn swap<F: Clone>(xyz: &[F; 3]) -> [F; 3] {
    [xyz[1].clone(), xyz[0].clone(), xyz[2].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn rf(text: &str) -> Qs {
        Qs::parse(text).unwrap()
    }

    #[test]
    fn coefficients() {
        let e = family_curve::<Rational>();
        assert_eq!(e.a2, rf("s^4 + 2*s^3 - 11*s^2 + 24*s - 12"));
        assert_eq!(e.a4, Qs::from_poly(Polynomial::from_i64s(&[-1, 1]).pow(4).scale(&Rational::from(48))));
        assert_eq!(e.a6, Qs::from_poly(Polynomial::from_i64s(&[-1, 1]).pow(6).scale(&Rational::from(-64))));
    }

    #[test]
    fn sections_lie_on_the_curve() {
        let e = family_curve::<Rational>();
        let sec = family_sections();
        assert!(e.contains(&sec.p) && e.contains(&sec.r));
        assert!(family_curve::<GaussianRational>().contains(&sec.q));
    }

    #[test]
    fn transform_of_the_curve_c() {
        let s = Qs::s();
        let c_point = [rf("s + 1"), rf("s - 1"), rf("s^2 - s")];
        assert_eq!(to_weierstrass(&s, &c_point).unwrap(), section_r_at(&s));
        let back = from_weierstrass(&s, &section_r_at(&s));
        // proportional to the input with factor 8 (s-1)(s+1)
        let k = rf("8*s^2 - 8");
        for (b, a) in back.iter().zip(&c_point) {
            assert_eq!(*b, a.mul(&k));
        }
        assert_eq!(
            to_weierstrass(&s, &[Qs::one(), Qs::from_i64(-1), Qs::zero()]).unwrap(),
            CurvePoint::Infinity
        );
    }

    #[test]
    fn specialization_at_two() {
        let s = Rational::from(2);
        let e = family_curve_at(&s);
        let r = section_r_at(&s);
        assert_eq!(r, CurvePoint::new(Rational::from(-8), Rational::from(24)));
        assert_eq!(e.rhs(&Rational::from(-8)), Rational::from(576));
    }

    #[test]
    fn q_from_its_cubic_coordinates() {
        // [x : y : z] = [i t : -i t : 1]
        let s = Gs::s();
        let i = Gs::constant(GaussianRational::i());
        let t = plane_parameter(&s).unwrap();
        let it = i.mul(&t);
        let q = to_weierstrass(&s, &[it.clone(), it.neg(), Gs::one()]).unwrap();
        assert_eq!(q, section_q_at(&s, &i));
    }
}
