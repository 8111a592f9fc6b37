//! Triangle families from the odd multiples of `R`.

use serde::Serialize;

use super::family::{family_curve, family_curve_at, from_weierstrass, section_r_at, Qs};
use super::triangle::Triangle;
use crate::arith::{Field, Rational};
use crate::elliptic::CurvePoint;
use crate::error::GeometryError;

/// `(2n-1) R` pushed to the plane cubic, and the triangle sides it defines.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleFamily {
    pub n: u32,
    #[serde(serialize_with = "display_all")]
    pub xyz: [Qs; 3],
    #[serde(serialize_with = "display_all")]
    pub sides: [Qs; 3],
}

fn display_all<S: serde::Serializer>(v: &[Qs; 3], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(|f| f.to_string()))
}

impl TripleFamily {
    /// `a + b + c`, identically `2 s (s + 1)`.
    pub fn perimeter(&self) -> Qs {
        self.sides[0].add(&self.sides[1]).add(&self.sides[2])
    }

    /// `A^2` from the sides by Heron's formula; identically `(s (s^2 - 1))^2`.
    pub fn area_squared(&self) -> Qs {
        let h = self.perimeter().div(&Qs::from_i64(2)).expect("nonzero");
        let [a, b, c] = &self.sides;
        h.mul(&h.sub(a)).mul(&h.sub(b)).mul(&h.sub(c))
    }
}

/// Sides `s (s+1) (y+z) / (x+y+z)` and cyclic shifts for a cubic point.
pub fn sides_from_cubic<F: Field>(s: &F, xyz: &[F; 3]) -> Option<[F; 3]> {
    let [x, y, z] = xyz;
    let k = s.mul(&s.add(&F::one())).div(&x.add(y).add(z))?;
    Some([k.mul(&y.add(z)), k.mul(&x.add(z)), k.mul(&x.add(y))])
}

/// `(2n - 1) R` on the curve over `F`, built by repeated addition of `2R`.
pub fn odd_multiple<F: Field>(s: &F, n: u32) -> Result<CurvePoint<F>, GeometryError> {
    if n == 0 {
        return Err(GeometryError::IndexOutOfRange);
    }
    let e = family_curve_at(s);
    let r = section_r_at(s);
    let two_r = e.double(&r);
    let mut acc = r;
    for _ in 1..n {
        acc = e.add_unchecked(&acc, &two_r);
    }
    Ok(acc)
}

pub fn generate_triple(n: u32) -> Result<TripleFamily, GeometryError> {
    let s = Qs::s();
    let pt = odd_multiple(&s, n)?;
    debug_assert!(family_curve::<Rational>().contains(&pt));
    let xyz = from_weierstrass(&s, &pt);
    let sides = sides_from_cubic(&s, &xyz).ok_or(GeometryError::Degenerate)?;
    Ok(TripleFamily { n, xyz, sides })
}

fn check_parameter(s0: &Rational) -> Result<(), GeometryError> {
    if *s0 <= Rational::from(1) {
        return Err(GeometryError::ParameterOutOfRange(s0.to_string()));
    }
    if family_curve_at(s0).is_singular() {
        return Err(GeometryError::SingularFiber(s0.to_string()));
    }
    Ok(())
}

/// `(2n - 1) R` on the fiber over `s0 > 1`.
pub fn specialize_point(n: u32, s0: &Rational) -> Result<CurvePoint<Rational>, GeometryError> {
    check_parameter(s0)?;
    odd_multiple(s0, n)
}

/// The triangle with perimeter `2 s0 (s0+1)` and area `s0 (s0^2 - 1)` from `(2n - 1) R`.
pub fn specialize_triangle(n: u32, s0: &Rational) -> Result<Triangle, GeometryError> {
    let pt = specialize_point(n, s0)?;
    if pt.is_infinity() {
        return Err(GeometryError::Degenerate);
    }
    let xyz = from_weierstrass(s0, &pt);
    let [a, b, c] = sides_from_cubic(s0, &xyz).ok_or(GeometryError::Degenerate)?;
    Triangle::new(a, b, c)
}

/// First coordinate of `(2n - 1) R` at `s0`; negative on the real component
/// that yields positive sides.
pub fn real_component_coordinate(n: u32, s0: &Rational) -> Result<Rational, GeometryError> {
    let pt = specialize_point(n, s0)?;
    pt.x().cloned().ok_or(GeometryError::Degenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    #[test]
    fn first_triple() {
        let t = generate_triple(1).unwrap();
        let s = Qs::s();
        let k = Qs::parse("8*s^2 - 8").unwrap();
        let expect = [Qs::parse("s + 1").unwrap(), Qs::parse("s - 1").unwrap(), Qs::parse("s^2 - s").unwrap()];
        for (got, e) in t.xyz.iter().zip(&expect) {
            assert_eq!(*got, e.mul(&k));
        }
        assert_eq!(t.perimeter(), Qs::parse("2*s^2 + 2*s").unwrap());
        let area = s.mul(&Qs::parse("s^2 - 1").unwrap());
        assert_eq!(t.area_squared(), area.square());
    }

    #[test]
    fn specializations_at_two() {
        assert_eq!(specialize_triangle(1, &q("2")).unwrap(), Triangle::from_i64s(3, 5, 4).unwrap());
        let t2 = specialize_triangle(2, &q("2")).unwrap();
        assert_eq!(t2, Triangle::new(q("101/21"), q("41/15"), q("156/35")).unwrap());
        assert_eq!(t2.perimeter(), q("12"));
        assert_eq!(t2.area(), Some(q("6")));
        let t3 = specialize_triangle(1, &q("3")).unwrap();
        assert_eq!((t3.perimeter(), t3.area(), t3.inradius()), (q("24"), Some(q("24")), Some(q("2"))));
    }

    #[test]
    fn rejects_small_parameters() {
        for s0 in ["1", "1/2", "0", "-1", "-3"] {
            assert!(matches!(
                specialize_triangle(1, &q(s0)),
                Err(GeometryError::ParameterOutOfRange(_))
            ));
        }
        assert_eq!(generate_triple(0).unwrap_err(), GeometryError::IndexOutOfRange);
    }

    #[test]
    fn family_agrees_with_fiber() {
        let fam = generate_triple(2).unwrap();
        let s0 = q("7/3");
        let direct = specialize_triangle(2, &s0).unwrap();
        let via: Vec<Rational> = fam.sides.iter().map(|f| f.eval(&s0).unwrap()).collect();
        let expect: Vec<Rational> = direct.sides().into_iter().cloned().collect();
        assert_eq!(via, expect);
    }

    fn parameter() -> impl Strategy<Value = Rational> {
        // s0 in (1, 10]
        (1i64..=90, 1i64..=10).prop_map(|(n, d)| Rational::from(1) + Rational::new(n.min(9 * d), d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn sides_positive_on_the_real_component(s0 in parameter(), n in 1u32..=5) {
            prop_assume!(!family_curve_at(&s0).is_singular());
            let t = specialize_triangle(n, &s0).unwrap();
            prop_assert!(t.sides().iter().all(|a| a.is_positive()));
            prop_assert!(real_component_coordinate(n, &s0).unwrap().is_negative());
            prop_assert_eq!(t.inradius(), Some(&s0 - &Rational::from(1)));
        }
    }

    #[test]
    fn pairwise_nonsimilar() {
        for s0 in ["2", "3", "5/2"].map(q) {
            let shapes: Vec<_> = (1..=5).map(|n| specialize_triangle(n, &s0).unwrap().shape()).collect();
            for i in 0..5 {
                for j in i + 1..5 {
                    assert_ne!(shapes[i], shapes[j], "s = {s0}, n = {}, {}", i + 1, j + 1);
                }
            }
        }
    }
}
