//! Dense univariate polynomials over a [`Field`].

pub mod factor;
pub mod gcd;
pub mod modp;
mod parse;
pub mod zpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Field, Rational};

/// Dense polynomial, coefficients lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        Self::new(vec![a.neg(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(F::poly_mul(&self.coeffs, &rhs.coeffs))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc_inv = d.lc()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Option<Self> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        F::poly_div_exact(self, d)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_some_and(|r| r.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluate at an element of a field containing the coefficients.
    pub fn eval_in<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(G::zero(), |acc, c| acc.mul(x).add(&embed(c)))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// Monic gcd; dispatches to the field's fastest algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        F::poly_gcd(self, other)
    }

    /// Number of trailing zero coefficients, i.e. the order of vanishing at 0.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Display with a chosen variable name.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, var }
    }
}

impl Polynomial<Rational> {
    /// Parse the `c_k*s^k + ... + c_0` textual form.
    pub fn parse(text: &str) -> Result<Self, crate::error::ParseError> {
        parse::parse_polynomial(text, "s")
    }

    pub fn parse_in(text: &str, var: &str) -> Result<Self, crate::error::ParseError> {
        parse::parse_polynomial(text, var)
    }

    /// Split into `content * primitive` with an integer primitive part whose
    /// leading coefficient is positive.
    pub fn content_primitive(&self) -> (Rational, Polynomial<Rational>) {
        if self.is_zero() {
            return (Rational::zero(), Self::zero());
        }
        let (ints, den) = zpoly::clear_denominators(&self.coeffs);
        let (cont, prim) = zpoly::content_primitive(&ints);
        let content = Rational::new(cont, den);
        (content, zpoly::to_rational(&prim))
    }
}

impl std::str::FromStr for Polynomial<Rational> {
    type Err = crate::error::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Polynomial::parse(s)
    }
}

struct DisplayWith<'a, F> {
    poly: &'a Polynomial<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for DisplayWith<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{}", self.var, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("s"))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("s"))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                Polynomial::$m(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polynomial<Rational> {
        Polynomial::parse(text).unwrap()
    }

    #[test]
    fn display_round_trips_through_parser() {
        let q = p("s^4 + 2*s^3 - 26*s^2 + 54*s - 27");
        assert_eq!(q.to_string(), "s^4 + 2*s^3 - 26*s^2 + 54*s - 27");
        let r = p("-3/2*s^2 + s - 1/7");
        assert_eq!(r.to_string(), "-3/2*s^2 + s - 1/7");
        assert_eq!(p(&r.to_string()), r);
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn division_and_derivative() {
        let a = p("s^3 - 1");
        let (q, r) = a.div_rem(&p("s - 1")).unwrap();
        assert_eq!(q, p("s^2 + s + 1"));
        assert!(r.is_zero());
        assert_eq!(a.derivative(), p("3*s^2"));
        assert!(a.div_rem(&Polynomial::zero()).is_none());
        assert_eq!(p("s^2 + 1").compose(&p("s + 1")), p("s^2 + 2*s + 2"));
    }

    #[test]
    fn rational_product_matches_schoolbook() {
        let a = p("1/2*s^3 - 2/3*s + 5");
        let b = p("7/5*s^2 + 1/9");
        let fast = a.mul(&b);
        let mut slow = Polynomial::zero();
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                slow = slow.add(&Polynomial::monomial(x * y, i + j));
            }
        }
        assert_eq!(fast, slow);
    }
}
