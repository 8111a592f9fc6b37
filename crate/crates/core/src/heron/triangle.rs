//! Rational triangles, the triangle/point dictionary, and integer scaling.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::surface::SurfacePoint;
use crate::arith::{denominator_lcm, Field, Rational};
use crate::error::{GeometryError, ParseError};

/// A nondegenerate triangle with positive rational sides.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl Triangle {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, GeometryError> {
        let ok = a.is_positive()
            && b.is_positive()
            && c.is_positive()
            && &a + &b > c
            && &b + &c > a
            && &a + &c > b;
        if !ok {
            return Err(GeometryError::NotATriangle(format!("({a}, {b}, {c})")));
        }
        Ok(Triangle { a, b, c })
    }

    pub fn from_i64s(a: i64, b: i64, c: i64) -> Result<Self, GeometryError> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn sides(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn perimeter(&self) -> Rational {
        &(&self.a + &self.b) + &self.c
    }

    /// `A^2 = s (s-a) (s-b) (s-c)` with `s` the semiperimeter.
    pub fn area_squared(&self) -> Rational {
        let h = &self.perimeter() / &Rational::from(2);
        let prod = &(&(&h - &self.a) * &(&h - &self.b)) * &(&h - &self.c);
        &h * &prod
    }

    /// `None` when the area is irrational.
    pub fn area(&self) -> Option<Rational> {
        self.area_squared().sqrt_exact()
    }

    /// `2A / p`, `None` when irrational.
    pub fn inradius(&self) -> Option<Rational> {
        let a = self.area()?;
        Some(&(&a * &Rational::from(2)) / &self.perimeter())
    }

    pub fn is_integral(&self) -> bool {
        self.sides().iter().all(|s| s.is_integer())
    }

    /// Sorted side ratios `(a/c, b/c)` with `a <= b <= c`; equal exactly for similar triangles.
    pub fn shape(&self) -> (Rational, Rational) {
        let mut s = [self.a.clone(), self.b.clone(), self.c.clone()];
        s.sort();
        (&s[0] / &s[2], &s[1] / &s[2])
    }

    pub fn is_similar(&self, other: &Triangle) -> bool {
        self.shape() == other.shape()
    }

    pub fn scale(&self, k: &Rational) -> Triangle {
        Triangle {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
        }
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(r^2, x, y, z)` with `x = p/2 - a` and cyclic; `r^2 = xyz / (x+y+z)`.
/// Defined even when the inradius is irrational.
pub fn triangle_coordinates(t: &Triangle) -> (Rational, Rational, Rational, Rational) {
    let h = &t.perimeter() / &Rational::from(2);
    let x = &h - &t.a;
    let y = &h - &t.b;
    let z = &h - &t.c;
    let r2 = &(&(&x * &y) * &z) / &h;
    (r2, x, y, z)
}

/// `[rho : x : y : z]` with `rho` the inradius, canonically scaled.
pub fn triangle_to_point(t: &Triangle) -> Result<SurfacePoint<Rational>, GeometryError> {
    let (r2, x, y, z) = triangle_coordinates(t);
    let r = r2
        .sqrt_exact()
        .ok_or_else(|| GeometryError::IrrationalInradius(t.to_string()))?;
    Ok(SurfacePoint::new(r, x, y, z).canonical())
}

/// The triangle with inradius one attached to `[r : x : y : z]`:
/// sides `(y+z, x+z, x+y) / r`.
pub fn point_to_triangle(pt: &SurfacePoint<Rational>) -> Result<Triangle, GeometryError> {
    if !pt.on_surface() {
        return Err(GeometryError::NotOnSurface);
    }
    if pt.r.is_zero() {
        return Err(GeometryError::NonPositiveRatios);
    }
    let [x, y, z] = [&pt.x / &pt.r, &pt.y / &pt.r, &pt.z / &pt.r];
    if !(x.is_positive() && y.is_positive() && z.is_positive()) {
        return Err(GeometryError::NonPositiveRatios);
    }
    Triangle::new(&y + &z, &x + &z, &x + &y)
}

/// Result of [`verify_heron`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeronReport {
    pub perimeter: Rational,
    /// `16 A^2 = p (p - 2a) (p - 2b) (p - 2c)`.
    pub sixteen_area_squared: Rational,
    /// `None` when the area is irrational.
    pub area: Option<Rational>,
    /// Integer sides and a positive integer area.
    pub is_heron: bool,
}

pub fn verify_heron(a: &Rational, b: &Rational, c: &Rational) -> Result<HeronReport, GeometryError> {
    let t = Triangle::new(a.clone(), b.clone(), c.clone())?;
    let p = t.perimeter();
    let two = Rational::from(2);
    let sixteen = &(&p * &(&p - &(&two * a))) * &(&(&p - &(&two * b)) * &(&p - &(&two * c)));
    let area = t.area();
    let is_heron = t.is_integral() && area.as_ref().is_some_and(|a| a.is_integer());
    Ok(HeronReport {
        perimeter: p,
        sixteen_area_squared: sixteen,
        area,
        is_heron,
    })
}

/// Integer triangles obtained by a common scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heronized {
    pub lambda: BigInt,
    pub triangles: Vec<Triangle>,
    pub perimeter: Rational,
    pub area: Rational,
}

/// Scale triangles that share perimeter and area by the least `lambda`
/// making every side and the common area integral.
pub fn heronize(triangles: &[Triangle]) -> Result<Heronized, GeometryError> {
    let first = triangles.first().ok_or(GeometryError::Mismatched)?;
    let p = first.perimeter();
    let a2 = first.area_squared();
    if triangles.iter().any(|t| t.perimeter() != p || t.area_squared() != a2) {
        return Err(GeometryError::Mismatched);
    }
    let area = first
        .area()
        .ok_or_else(|| GeometryError::IrrationalInradius(first.to_string()))?;
    let l = denominator_lcm(triangles.iter().flat_map(|t| t.sides()));
    let lf = Rational::from_integer(l.clone());
    let scaled_area = &area * &(&lf * &lf);
    let lambda = l * square_root_cover(scaled_area.denom());
    let k = Rational::from_integer(lambda.clone());
    Ok(Heronized {
        triangles: triangles.iter().map(|t| t.scale(&k)).collect(),
        perimeter: &p * &k,
        area: &area * &(&k * &k),
        lambda,
    })
}

/// Least `m > 0` with `d | m^2`.
fn square_root_cover(d: &BigInt) -> BigInt {
    let mut m = BigInt::one();
    let mut rest = d.clone();
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        let mut e = 0u32;
        while (&rest % &f).is_zero() {
            rest /= &f;
            e += 1;
        }
        m *= f.pow(e.div_ceil(2));
        f += 1;
    }
    if rest > BigInt::one() {
        m *= rest;
    }
    m
}

/// One triangle per line as `a,b,c`; blank lines and `#` comments are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<Triangle>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| ParseError::Csv { line: i + 1, msg };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        }
        let mut sides = Vec::with_capacity(3);
        for f in fields {
            sides.push(f.parse::<Rational>().map_err(|e| err(e.to_string()))?);
        }
        let [a, b, c]: [Rational; 3] = sides.try_into().expect("three sides");
        out.push(Triangle::new(a, b, c).map_err(|e| err(e.to_string()))?);
    }
    Ok(out)
}

/// JSON record with every number as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleRecord {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub perimeter: Rational,
    pub area: Option<Rational>,
}

impl From<&Triangle> for TriangleRecord {
    fn from(t: &Triangle) -> Self {
        TriangleRecord {
            a: t.a.clone(),
            b: t.b.clone(),
            c: t.c.clone(),
            perimeter: t.perimeter(),
            area: t.area(),
        }
    }
}

impl Serialize for Triangle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TriangleRecord::from(self).serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn qr(text: &str) -> Rational {
        text.parse().unwrap()
    }

    #[test]
    fn three_four_five() {
        let t = Triangle::from_i64s(3, 4, 5).unwrap();
        let pt = triangle_to_point(&t).unwrap();
        assert_eq!(pt, SurfacePoint::new(q(1), q(3), q(2), q(1)));
        assert_eq!(point_to_triangle(&pt).unwrap(), t);
        let rep = verify_heron(&q(3), &q(4), &q(5)).unwrap();
        assert_eq!((rep.perimeter, rep.area), (q(12), Some(q(6))));
        assert!(rep.is_heron);
    }

    #[test]
    fn equilateral_has_irrational_inradius() {
        let t = Triangle::from_i64s(2, 2, 2).unwrap();
        let (r2, x, y, z) = triangle_coordinates(&t);
        assert_eq!((x.clone(), y, z), (q(1), q(1), q(1)));
        assert_eq!(&r2 * &q(3), q(1));
        assert!(matches!(triangle_to_point(&t), Err(GeometryError::IrrationalInradius(_))));
        let rep = verify_heron(&q(1), &q(1), &q(1)).unwrap();
        assert_eq!(rep.area, None);
        assert!(!rep.is_heron);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Triangle::from_i64s(1, 2, 3).is_err());
        assert!(Triangle::from_i64s(-3, 4, 5).is_err());
        let neg = SurfacePoint::new(q(1), q(-1), q(2), q(1));
        assert!(point_to_triangle(&neg).is_err());
    }

    #[test]
    fn heronize_two_triangles() {
        let t1 = Triangle::from_i64s(3, 5, 4).unwrap();
        let t2 = Triangle::new(qr("101/21"), qr("41/15"), qr("156/35")).unwrap();
        let h = heronize(&[t1, t2]).unwrap();
        assert_eq!(h.lambda, BigInt::from(105));
        assert_eq!(h.triangles[0], Triangle::from_i64s(315, 525, 420).unwrap());
        assert_eq!(h.triangles[1], Triangle::from_i64s(505, 287, 468).unwrap());
        assert_eq!((h.perimeter, h.area), (q(1260), q(66150)));
        let single = heronize(&[Triangle::from_i64s(13, 14, 15).unwrap()]).unwrap();
        assert_eq!(single.lambda, BigInt::one());
        let other = Triangle::from_i64s(5, 5, 6).unwrap();
        assert_eq!(
            heronize(&[Triangle::from_i64s(3, 4, 5).unwrap(), other]),
            Err(GeometryError::Mismatched)
        );
    }

    #[test]
    fn square_root_cover_values() {
        for (d, m) in [(1, 1), (4, 2), (8, 4), (12, 6), (49, 7), (50, 10)] {
            assert_eq!(square_root_cover(&BigInt::from(d)), BigInt::from(m));
        }
    }

    #[test]
    fn csv() {
        let ts = parse_csv("# sides\n3,4,5\n\n101/21, 41/15, 156/35\n").unwrap();
        assert_eq!(ts.len(), 2);
        assert!(matches!(parse_csv("1,2\n"), Err(ParseError::Csv { line: 1, .. })));
        assert!(matches!(parse_csv("3,4,5\n1,1,9"), Err(ParseError::Csv { line: 2, .. })));
    }

    #[test]
    fn json_record_uses_strings() {
        let t = Triangle::from_i64s(3, 4, 5).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["a"], "3");
        assert_eq!(v["area"], "6");
        assert_eq!(v["perimeter"], "12");
    }
}
