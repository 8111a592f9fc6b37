//! Scalar fields.
//!
//! Everything above this module is written against [`Field`], so the same
//! polynomial, rational-function and group-law code runs over `Q`, `Q(i)`,
//! prime fields and rational function fields built on top of them.

mod gaussian;
mod prime_field;
mod rational;

pub use gaussian::GaussianRational;
pub use prime_field::Fp;
pub use rational::{denominator_lcm, Integer, Rational};

use std::fmt;

use crate::poly::Polynomial;

/// A commutative field with context-free constants.
///
/// Arithmetic is by reference so that large coefficients are not cloned on
/// every operation. The `poly_*` hooks let a concrete field replace the
/// generic schoolbook product, long division and Euclidean gcd with
/// something faster.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Characteristic of the field, 0 for characteristic zero.
    fn characteristic() -> u64;

    /// Coefficient-list product, lowest degree first. Inputs are nonempty.
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        out
    }

    /// Quotient `a / b` when the division is exact. `b` is nonzero.
    fn poly_div_exact(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        let (q, r) = a.div_rem(b)?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd of two polynomials; `gcd(0, 0) = 0`.
    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        crate::poly::gcd::euclid(a, b)
    }

    /// Whether a squarefree polynomial is irreducible, if this field can
    /// decide it. The default only knows about linear polynomials.
    fn certify_irreducible(p: &Polynomial<Self>) -> Option<bool> {
        match p.degree() {
            Some(1) => Some(true),
            _ => None,
        }
    }
}
