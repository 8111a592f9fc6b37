//! Local models and reduction types over places of `F(s)`.

use std::fmt;

use serde::Serialize;

use super::WeierstrassCurve;
use crate::arith::{Field, Rational};
use crate::error::CurveError;
use crate::function_field::{Place, Valuation};
use crate::poly::factor::squarefree_factor;
use crate::ratfunc::RationalFunction;

type Rf<F> = RationalFunction<F>;

/// A model integral and minimal at one place, with the change of variables
/// `x' = pi^(-2k) (x + shift)`, `y' = pi^(-3k) y` from the input model.
#[derive(Clone, Debug)]
pub struct Minimalized<F: Field> {
    pub curve: WeierstrassCurve<Rf<F>>,
    pub k: i64,
    pub shift: Rf<F>,
}

impl<F: Field> Minimalized<F> {
    /// Image of a point of the input model.
    pub fn transform(&self, place: &Place<F>, x: &Rf<F>, y: &Rf<F>) -> (Rf<F>, Rf<F>) {
        let pi = place.uniformizer();
        let sx = pi.powi(-2 * self.k).expect("uniformizer is nonzero");
        let sy = pi.powi(-3 * self.k).expect("uniformizer is nonzero");
        (x.add(&self.shift).mul(&sx), y.mul(&sy))
    }
}

fn weighted_floor(v: Valuation, w: i64) -> i64 {
    match v {
        Valuation::Finite(v) => v.div_euclid(w),
        Valuation::Infinite => i64::MAX,
    }
}

fn rescale<F: Field>(c: &WeierstrassCurve<Rf<F>>, pi: &Rf<F>, k: i64) -> WeierstrassCurve<Rf<F>> {
    let u = |w: i64| pi.powi(-w * k).expect("uniformizer is nonzero");
    WeierstrassCurve::new(c.a2.mul(&u(2)), c.a4.mul(&u(4)), c.a6.mul(&u(6)))
}

fn is_minimal<F: Field>(c: &WeierstrassCurve<Rf<F>>, place: &Place<F>) -> bool {
    let inv = c.invariants();
    !(place.valuation(&inv.c4) >= Valuation::Finite(4)
        && place.valuation(&inv.discriminant) >= Valuation::Finite(12))
}

/// Rescale `(x, y) -> (pi^(-2k) x, pi^(-3k) y)` with the largest `k` keeping
/// the model integral at `place`. If the result is still not minimal, the
/// `x^2` term is first removed by translation and the scaling retried.
pub fn minimalize_at_place<F: Field>(
    curve: &WeierstrassCurve<Rf<F>>,
    place: &Place<F>,
) -> Minimalized<F> {
    let pi = place.uniformizer();
    let best_k = |c: &WeierstrassCurve<Rf<F>>| {
        [(2, &c.a2), (4, &c.a4), (6, &c.a6)]
            .into_iter()
            .map(|(w, a)| weighted_floor(place.valuation(a), w))
            .min()
            .expect("three coefficients")
    };
    let k = best_k(curve);
    let k = if k == i64::MAX { 0 } else { k };
    let scaled = rescale(curve, &pi, k);
    if is_minimal(&scaled, place) {
        return Minimalized {
            curve: scaled,
            k,
            shift: Rf::zero(),
        };
    }
    // x -> x - a2/3
    let shift = curve.a2.mul(&Rf::from_i64(3).inv().expect("characteristic is not 3"));
    let t = shift.neg();
    let a4 = curve.a4.sub(&curve.a2.square().mul(&Rf::from_i64(3).inv().expect("nonzero")));
    let short = WeierstrassCurve::new(Rf::zero(), a4, curve.rhs(&t));
    let k2 = best_k(&short);
    let k2 = if k2 == i64::MAX { 0 } else { k2 };
    Minimalized {
        curve: rescale(&short, &pi, k2),
        k: k2,
        shift,
    }
}

/// Kodaira symbol; `I(0)` is a smooth fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
}

impl Kodaira {
    /// Number of irreducible components `m_v`.
    pub fn components(self) -> u32 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
        }
    }

    /// Number of simple components `m_v^(1)`, the order of the component group.
    pub fn simple_components(self) -> u32 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
        }
    }

    /// Euler number of the singular fiber.
    pub fn euler_number(self) -> u32 {
        match self {
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
        }
    }

    /// Local height correction for sections meeting components `i` and `j`
    /// (0 is the identity component).
    pub fn contribution(self, i: u32, j: u32) -> Rational {
        let (i, j) = (i.min(j), i.max(j));
        if i == 0 {
            return Rational::from(0);
        }
        match self {
            Kodaira::I(n) => Rational::new(i64::from(i) * i64::from(n - j), i64::from(n)),
            Kodaira::III => Rational::new(1, 2),
            Kodaira::IV if i == j => Rational::new(2, 3),
            Kodaira::IV => Rational::new(1, 3),
            Kodaira::II => Rational::from(0),
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
        }
    }
}

/// Reduction data of a family at one place.
#[derive(Clone, Debug)]
pub struct FiberClass<F: Field> {
    pub place: Place<F>,
    pub kodaira: Kodaira,
    pub v_c4: i64,
    pub v_delta: i64,
}

impl<F: Field> FiberClass<F> {
    pub fn components(&self) -> u32 {
        self.kodaira.components()
    }

    pub fn simple_components(&self) -> u32 {
        self.kodaira.simple_components()
    }

    /// Number of geometric fibers this place accounts for.
    pub fn degree(&self) -> usize {
        self.place.degree()
    }
}

/// Kodaira type at `place` from `(v(c4), v(disc))` on a minimal model.
pub fn classify_fiber<F: Field>(
    curve: &WeierstrassCurve<Rf<F>>,
    place: &Place<F>,
) -> Result<FiberClass<F>, CurveError> {
    let model = minimalize_at_place(curve, place).curve;
    let inv = model.invariants();
    let v_c4 = place.valuation(&inv.c4);
    let v_delta = place.valuation(&inv.discriminant);
    let as_i64 = |v: Valuation| v.finite().unwrap_or(i64::MAX);
    if !is_minimal(&model, place) {
        return Err(CurveError::NonMinimal(place.to_string()));
    }
    let (v_c4, v_delta) = (as_i64(v_c4), as_i64(v_delta));
    if v_delta == i64::MAX {
        return Err(CurveError::Singular);
    }
    let kodaira = match (v_c4, v_delta) {
        (0, n) => Kodaira::I(n as u32),
        (_, 0) => Kodaira::I(0),
        (_, 2) => Kodaira::II,
        (_, 3) => Kodaira::III,
        (c, 4) if c >= 2 => Kodaira::IV,
        _ => {
            return Err(CurveError::UnsupportedFiber {
                place: place.to_string(),
                v_c4,
                v_disc: v_delta,
            })
        }
    };
    Ok(FiberClass {
        place: place.clone(),
        kodaira,
        v_c4,
        v_delta,
    })
}

/// All singular fibers of a family over `Q(s)`: the places dividing the
/// numerator or denominator of the discriminant, and infinity.
pub fn fiber_configuration(
    curve: &WeierstrassCurve<Rf<Rational>>,
) -> Result<Vec<FiberClass<Rational>>, crate::error::Error> {
    if curve.is_singular() {
        return Err(CurveError::Singular.into());
    }
    let disc = curve.discriminant();
    let mut places = Vec::new();
    for part in [disc.numer(), disc.denom()] {
        if part.is_constant() {
            continue;
        }
        for (f, _) in squarefree_factor(part)?.factors {
            let place = Place::finite(f)?;
            if !places.contains(&place) {
                places.push(place);
            }
        }
    }
    places.push(Place::Infinity);
    let mut fibers = Vec::new();
    for place in places {
        let fc = classify_fiber(curve, &place)?;
        if fc.v_delta > 0 {
            fibers.push(fc);
        }
    }
    Ok(fibers)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rf<Rational>;

    fn rf(text: &str) -> Q {
        Q::parse(text).unwrap()
    }

    #[test]
    fn contribution_table() {
        let i6 = Kodaira::I(6);
        assert_eq!(i6.contribution(3, 3), Rational::new(3, 2));
        assert_eq!(i6.contribution(1, 3), Rational::new(1, 2));
        assert_eq!(i6.contribution(0, 4), Rational::from(0));
        assert_eq!(Kodaira::IV.contribution(1, 1), Rational::new(2, 3));
        assert_eq!(Kodaira::IV.contribution(1, 2), Rational::new(1, 3));
    }

    #[test]
    fn descaling_recovers_the_model() {
        let e = WeierstrassCurve::new(rf("s"), rf("s + 2"), rf("3"));
        let place = Place::at(&Rational::from(1));
        let u = rf("s - 1");
        let scaled = WeierstrassCurve::new(
            e.a2.mul(&u.pow(2)),
            e.a4.mul(&u.pow(4)),
            e.a6.mul(&u.pow(6)),
        );
        let m = minimalize_at_place(&scaled, &place);
        assert_eq!(m.k, 1);
        assert_eq!(m.curve, e);
        let m0 = minimalize_at_place(&e, &place);
        assert_eq!((m0.k, &m0.curve), (0, &e));
    }

    #[test]
    fn additive_types() {
        // y^2 = x^3 + s: II at s = 0
        let e = WeierstrassCurve::new(Q::zero(), Q::zero(), rf("s"));
        let fc = classify_fiber(&e, &Place::at(&Rational::from(0))).unwrap();
        assert_eq!(fc.kodaira, Kodaira::II);
        // y^2 = x^3 + s x: III
        let e = WeierstrassCurve::new(Q::zero(), rf("s"), Q::zero());
        let fc = classify_fiber(&e, &Place::at(&Rational::from(0))).unwrap();
        assert_eq!(fc.kodaira, Kodaira::III);
        // y^2 = x^3 + s^2: IV
        let e = WeierstrassCurve::new(Q::zero(), Q::zero(), rf("s^2"));
        let fc = classify_fiber(&e, &Place::at(&Rational::from(0))).unwrap();
        assert_eq!(fc.kodaira, Kodaira::IV);
        // y^2 = x^3 + s^5 is II*, outside the supported set
        let e = WeierstrassCurve::new(Q::zero(), Q::zero(), rf("s^5"));
        assert!(matches!(
            classify_fiber(&e, &Place::at(&Rational::from(0))),
            Err(CurveError::UnsupportedFiber { .. })
        ));
    }
}
