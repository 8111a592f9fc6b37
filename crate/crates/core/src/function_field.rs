//! Places and discrete valuations of `F(s)`, and Newton polygons over them.

use std::fmt;
use std::ops::Add;

use crate::arith::{Field, Rational};
use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;

/// A place of `F(s)` trivial on `F`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place<F: Field> {
    /// Zeros of a monic irreducible polynomial.
    Finite(Polynomial<F>),
    /// `v(f) = deg(den) - deg(num)`.
    Infinity,
}

impl<F: Field> Place<F> {
    /// Place of a monic irreducible polynomial. Irreducibility must be
    /// certifiable by the coefficient field.
    pub fn finite(p: Polynomial<F>) -> Result<Self, AlgebraError> {
        if p.is_constant() {
            return Err(AlgebraError::NotIrreducible(p.to_string()));
        }
        let p = p.monic();
        match F::certify_irreducible(&p) {
            Some(true) => Ok(Place::Finite(p)),
            Some(false) => Err(AlgebraError::NotIrreducible(p.to_string())),
            None => Err(AlgebraError::Inconclusive(p.to_string())),
        }
    }

    /// The place `s = a`.
    pub fn at(a: &F) -> Self {
        Place::Finite(Polynomial::linear_root(a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().expect("nonconstant"),
            Place::Infinity => 1,
        }
    }

    /// A uniformizer: the defining polynomial, or `1/s` at infinity.
    pub fn uniformizer(&self) -> RationalFunction<F> {
        match self {
            Place::Finite(p) => RationalFunction::from_poly(p.clone()),
            Place::Infinity => RationalFunction::s().inv().expect("s is nonzero"),
        }
    }

    /// Valuation of a polynomial at this place.
    pub fn valuation_poly(&self, f: &Polynomial<F>) -> Valuation {
        let Some(d) = f.degree() else {
            return Valuation::Infinite;
        };
        match self {
            Place::Infinity => Valuation::Finite(-(d as i64)),
            Place::Finite(p) => {
                if p.degree() == Some(1) {
                    return Valuation::Finite(linear_multiplicity(f, p) as i64);
                }
                let mut k = 0;
                let mut rest = f.clone();
                while let Some(q) = rest.div_exact(p) {
                    rest = q;
                    k += 1;
                }
                Valuation::Finite(k)
            }
        }
    }

    pub fn valuation(&self, f: &RationalFunction<F>) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinite;
        }
        let n = self.valuation_poly(f.numer()).finite().expect("nonzero");
        let d = self.valuation_poly(f.denom()).finite().expect("nonzero");
        Valuation::Finite(n - d)
    }

    /// Leading coefficient of `f` in the expansion at a degree-one place:
    /// `f / pi^v(f)` evaluated at the place. `None` for `f = 0`.
    pub fn leading_coefficient(&self, f: &RationalFunction<F>) -> Option<F> {
        let v = self.valuation(f).finite()?;
        let unit = Field::mul(f, &self.uniformizer().powi(-v)?);
        self.reduce(&unit)
    }

    /// Residue of a `v`-integral function at a degree-one place.
    pub fn reduce(&self, f: &RationalFunction<F>) -> Option<F> {
        match self {
            Place::Finite(p) if p.degree() == Some(1) => f.eval(&p.coeff(0).neg()),
            Place::Finite(_) => None,
            Place::Infinity => {
                let flipped = f.compose(&RationalFunction::s().inv().expect("nonzero"));
                flipped.eval(&F::zero())
            }
        }
    }
}

/// Multiplicity of the root of the monic linear `p` in `f`, by synthetic division.
fn linear_multiplicity<F: Field>(f: &Polynomial<F>, p: &Polynomial<F>) -> usize {
    let a = p.coeff(0).neg();
    let mut coeffs = f.coeffs().to_vec();
    let mut k = 0;
    while coeffs.len() > 1 {
        let mut carry = F::zero();
        let mut quot = vec![F::zero(); coeffs.len() - 1];
        for i in (0..coeffs.len()).rev() {
            carry = carry.mul(&a).add(&coeffs[i]);
            if i > 0 {
                quot[i - 1] = carry.clone();
            }
        }
        if !carry.is_zero() {
            break;
        }
        coeffs = quot;
        k += 1;
    }
    k
}

impl<F: Field> fmt::Display for Place<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "oo"),
        }
    }
}

impl<F: Field> fmt::Debug for Place<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Discrete valuation value; zero has valuation `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Lower convex hull of `(i, v(a_i))`, as `(slope, length)` segments with
/// strictly increasing slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<(Rational, usize)>,
}

impl NewtonPolygon {
    /// Root valuations (negated slopes) with multiplicities.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.segments.iter().map(|(m, l)| (-m, *l)).collect()
    }

    /// Root valuations as a flat sorted list.
    pub fn root_valuation_multiset(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .root_valuations()
            .into_iter()
            .flat_map(|(v, l)| std::iter::repeat(v).take(l))
            .collect();
        out.sort();
        out
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|(_, l)| l).sum()
    }
}

/// Newton polygon of `q(u) = sum a_i u^i` at `place`.
///
/// Roots of `q` equal to zero (trailing zero coefficients) are dropped; they
/// have infinite valuation.
pub fn newton_polygon<F: Field>(
    q: &Polynomial<RationalFunction<F>>,
    place: &Place<F>,
) -> Result<NewtonPolygon, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let points: Vec<(i64, i64)> = q
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| place.valuation(a).finite().map(|v| (i as i64, v)))
        .collect();
    Ok(lower_hull(&points))
}

/// Lower hull of points sorted by increasing abscissa.
pub fn lower_hull(points: &[(i64, i64)]) -> NewtonPolygon {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let cross = (x2 - x1) as i128 * (p.1 - y1) as i128 - (y2 - y1) as i128 * (p.0 - x1) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            (Rational::new(dy, dx), dx as usize)
        })
        .collect();
    NewtonPolygon { segments }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = RationalFunction<Rational>;

    fn rf(text: &str) -> Q {
        Q::parse(text).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn valuations() {
        let p1 = Place::at(&r(1));
        assert_eq!(p1.valuation(&rf("(s^3 - 3*s^2 + 3*s - 1)/(s)")), Valuation::Finite(3));
        assert_eq!(Place::Infinity.valuation(&rf("s^2 + 1")), Valuation::Finite(-2));
        assert_eq!(p1.valuation(&Q::zero()), Valuation::Infinite);
        let quartic = Place::finite(Polynomial::parse("s^4 + 2*s^3 - 26*s^2 + 54*s - 27").unwrap())
            .unwrap();
        let q = rf("s^4 + 2*s^3 - 26*s^2 + 54*s - 27");
        assert_eq!(quartic.valuation(&Field::mul(&q, &q)), Valuation::Finite(2));
        assert_eq!(quartic.degree(), 4);
        assert!(Place::finite(Polynomial::parse("s^2 - 1").unwrap()).is_err());
    }

    #[test]
    fn residues() {
        let f = rf("(s^2 + 3)/(s - 2)");
        assert_eq!(Place::at(&r(1)).reduce(&f), Some(r(-4)));
        assert_eq!(Place::Infinity.reduce(&rf("(2*s + 1)/(s - 5)")), Some(r(2)));
        // (s-1)^2 (s+2) at s = 1: unit part (s+2) takes the value 3
        let g = rf("s^3 - 3*s + 2");
        assert_eq!(Place::at(&r(1)).leading_coefficient(&g), Some(r(3)));
        assert_eq!(Place::Infinity.leading_coefficient(&rf("-5*s^3 + s")), Some(r(-5)));
    }

    #[test]
    fn polygon_of_simple_quadratic() {
        // u^2 - (s-1) u
        let q = Polynomial::new(vec![Q::zero(), rf("1 - s"), Q::one()]);
        let np = newton_polygon(&q, &Place::at(&r(1))).unwrap();
        // the zero root is dropped; the other has valuation 1
        assert_eq!(np.root_valuation_multiset(), vec![r(1)]);
        let q = Polynomial::new(vec![rf("s - 1"), rf("s + 3"), Q::one()]);
        let np = newton_polygon(&q, &Place::at(&r(1))).unwrap();
        assert_eq!(np.root_valuation_multiset(), vec![r(0), r(1)]);
    }

    #[test]
    fn hull_from_valuation_list() {
        let np = lower_hull(&[(0, 2), (1, 1), (2, 0), (3, 1), (4, 0)]);
        assert_eq!(np.segments, vec![(r(-1), 2), (r(0), 2)]);
        assert_eq!(np.root_valuation_multiset(), vec![r(0), r(0), r(1), r(1)]);
        let flat = lower_hull(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(flat.segments, vec![(r(0), 2)]);
    }

    fn small_function() -> impl Strategy<Value = Q> {
        (
            prop::collection::vec(-4i64..5, 1..4),
            prop::collection::vec(-4i64..5, 1..3),
            0u32..3,
            -2i64..3,
        )
            .prop_filter_map("zero numerator or denominator", |(n, d, k, c)| {
                let (n, d) = (Polynomial::from_i64s(&n), Polynomial::from_i64s(&d));
                let shift = Polynomial::from_i64s(&[-1, 1]).pow(k);
                let f = Q::new(n.mul(&shift), d)?;
                Some(Field::add(&f, &Q::from_i64(c)))
            })
    }

    fn places() -> Vec<Place<Rational>> {
        vec![
            Place::at(&r(1)),
            Place::at(&r(0)),
            Place::Infinity,
            Place::finite(Polynomial::from_i64s(&[1, 0, 1])).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn valuation_is_multiplicative_and_ultrametric(f in small_function(), g in small_function()) {
            for place in places() {
                let (vf, vg) = (place.valuation(&f), place.valuation(&g));
                prop_assert_eq!(place.valuation(&Field::mul(&f, &g)), vf + vg);
                prop_assert!(place.valuation(&Field::add(&f, &g)) >= vf.min(vg));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn polygon_recovers_root_valuations(roots in prop::collection::vec((1i64..6, 0u32..4), 1..5)) {
            let t = Q::from_poly(Polynomial::from_i64s(&[-1, 1]));
            let q = roots.iter().fold(Polynomial::one(), |acc, (c, k)| {
                let root = Field::mul(&Q::from_i64(*c), &Field::pow(&t, *k as u64));
                acc.mul(&Polynomial::new(vec![root.neg(), Q::one()]))
            });
            let np = newton_polygon(&q, &Place::at(&r(1))).unwrap();
            let mut want: Vec<Rational> = roots.iter().map(|(_, k)| r(*k as i64)).collect();
            want.sort();
            prop_assert_eq!(np.root_valuation_multiset(), want);
        }
    }
}
