//! Curves `y^2 = x^3 + a2 x^2 + a4 x + a6` over any field of characteristic
//! other than 2 and 3, their group law and invariants.

mod fiber;

pub use fiber::{
    classify_fiber, fiber_configuration, minimalize_at_place, FiberClass, Kodaira, Minimalized,
};

use std::fmt;

use serde::Serialize;

use crate::arith::Field;
use crate::error::CurveError;

#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassCurve<F: Field> {
    pub a2: F,
    pub a4: F,
    pub a6: F,
    disc: F,
}

/// `b`, `c` invariants, discriminant and j-invariant (absent when singular).
#[derive(Clone, Debug, PartialEq)]
pub struct CurveInvariants<F: Field> {
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
    pub c6: F,
    pub discriminant: F,
    pub j: Option<F>,
}

/// A point: the origin or an affine point.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub enum CurvePoint<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> CurvePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::new(x.clone(), y.neg()),
        }
    }

    /// Coordinate-wise image under a field map.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CurvePoint<G> {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::new(f(x), f(y)),
        }
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field> fmt::Debug for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a2: F, a4: F, a6: F) -> Self {
        let disc = discriminant(&a2, &a4, &a6);
        WeierstrassCurve { a2, a4, a6, disc }
    }

    pub fn discriminant(&self) -> &F {
        &self.disc
    }

    pub fn is_singular(&self) -> bool {
        self.disc.is_zero()
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: &F) -> F {
        x.add(&self.a2).mul(x).add(&self.a4).mul(x).add(&self.a6)
    }

    /// Derivative of [`Self::rhs`].
    pub fn rhs_derivative(&self, x: &F) -> F {
        let three = F::from_i64(3);
        let two = F::from_i64(2);
        three.mul(x).add(&two.mul(&self.a2)).mul(x).add(&self.a4)
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    pub fn invariants(&self) -> CurveInvariants<F> {
        let f = F::from_i64;
        let b2 = f(4).mul(&self.a2);
        let b4 = f(2).mul(&self.a4);
        let b6 = f(4).mul(&self.a6);
        let b8 = f(4).mul(&self.a2).mul(&self.a6).sub(&self.a4.square());
        let c4 = b2.square().sub(&f(24).mul(&b4));
        let c6 = b2
            .square()
            .mul(&b2)
            .neg()
            .add(&f(36).mul(&b2).mul(&b4))
            .sub(&f(216).mul(&b6));
        let j = c4.square().mul(&c4).div(&self.disc);
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            discriminant: self.disc.clone(),
            j,
        }
    }

    fn check(&self, p: &CurvePoint<F>) -> Result<(), CurveError> {
        if self.is_singular() {
            return Err(CurveError::Singular);
        }
        if !self.contains(p) {
            return Err(CurveError::NotOnCurve);
        }
        Ok(())
    }

    /// Group law with `O` as identity.
    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>, CurveError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    /// Group law on points already known to lie on a smooth curve.
    pub fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 != x2 {
            y2.sub(y1).div(&x2.sub(x1)).expect("distinct abscissae")
        } else {
            // vertical chord, or tangent at a 2-torsion point
            match y1.add(y2).inv() {
                None => return CurvePoint::Infinity,
                Some(inv2y) => self.rhs_derivative(x1).mul(&inv2y),
            }
        };
        let x3 = lambda.square().sub(&self.a2).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        CurvePoint::new(x3, y3)
    }

    pub fn double(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        self.add_unchecked(p, p)
    }

    /// `k * p` by double-and-add; negative `k` negates.
    pub fn scalar_mul(&self, k: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>, CurveError> {
        self.check(p)?;
        Ok(self.scalar_mul_unchecked(k, p))
    }

    pub fn scalar_mul_unchecked(&self, k: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        let mut base = if k < 0 { p.neg() } else { p.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Order of a torsion point up to `bound`, or `None`.
    pub fn order(&self, p: &CurvePoint<F>, bound: u64) -> Option<u64> {
        let mut acc = p.clone();
        for k in 1..=bound {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = self.add_unchecked(&acc, p);
        }
        None
    }

    /// Image of the curve under a coefficient map.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WeierstrassCurve<G> {
        WeierstrassCurve::new(f(&self.a2), f(&self.a4), f(&self.a6))
    }
}

/// Discriminant of the cubic model, `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6`.
fn discriminant<F: Field>(a2: &F, a4: &F, a6: &F) -> F {
    let f = F::from_i64;
    let b2 = f(4).mul(a2);
    let b4 = f(2).mul(a4);
    let b6 = f(4).mul(a6);
    let b8 = f(4).mul(a2).mul(a6).sub(&a4.square());
    b2.square()
        .mul(&b8)
        .neg()
        .sub(&f(8).mul(&b4.square()).mul(&b4))
        .sub(&f(27).mul(&b6.square()))
        .add(&f(9).mul(&b2).mul(&b4).mul(&b6))
}

impl<F: Field> fmt::Display for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x^2 + ({})x + ({})", self.a2, self.a4, self.a6)
    }
}

impl<F: Field> fmt::Debug for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
