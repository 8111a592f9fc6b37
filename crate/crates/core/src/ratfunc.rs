//! The rational function field `F(s)`.

use std::fmt;

use crate::arith::{Field, Rational};
use crate::poly::Polynomial;

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    /// `None` when `den` is zero.
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Some(Self::from_coprime(num, den))
    }

    /// Skips the gcd; the caller guarantees `gcd(num, den) = 1`.
    fn from_coprime(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let lc = den.lc().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The generator `s`.
    pub fn s() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numer(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value at `s = a`, or `None` at a pole.
    pub fn eval(&self, a: &F) -> Option<F> {
        self.num.eval(a).div(&self.den.eval(a))
    }

    /// Substitute `s -> t(s)`.
    pub fn compose(&self, t: &Self) -> Self {
        let subst = |p: &Polynomial<F>| {
            p.coeffs()
                .iter()
                .rev()
                .fold(Self::zero_value(), |acc, c| {
                    Field::add(&Field::mul(&acc, t), &Self::constant(c.clone()))
                })
        };
        Field::div(&subst(&self.num), &subst(&self.den)).expect("composition has no pole")
    }

    /// Apply a coefficient map, e.g. complex conjugation.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RationalFunction<G> {
        RationalFunction::new(self.num.map(&f), self.den.map(&f)).expect("nonzero denominator")
    }

    /// `self^e` for any integer `e`; `None` for a nonpositive power of zero.
    pub fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { Field::inv(self)? } else { self.clone() };
        Some(Field::pow(&base, e.unsigned_abs()))
    }

    fn zero_value() -> Self {
        Self::from_poly(Polynomial::zero())
    }
}

impl RationalFunction<Rational> {
    /// Parse `num` or `(num)/(den)` in the polynomial grammar.
    pub fn parse(text: &str) -> Result<Self, crate::error::ParseError> {
        let t = text.trim();
        if let Some((n, d)) = t.split_once(")/(") {
            if let (Some(n), Some(d)) = (n.strip_prefix('('), d.strip_suffix(')')) {
                let num = Polynomial::parse(n)?;
                let den = Polynomial::parse(d)?;
                return Self::new(num, den).ok_or(crate::error::ParseError::Polynomial {
                    input: text.to_string(),
                    pos: 0,
                    msg: "zero denominator",
                });
            }
        }
        Ok(Self::from_poly(Polynomial::parse(t)?))
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::constant(F::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero");
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self::from_coprime(num, self.den.mul(&rhs.den));
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d).add(&rhs.num.mul(&b));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = t.gcd(&g);
        let den = b.mul(&rhs.den);
        if g2.is_one() {
            Self::from_coprime(t, den)
        } else {
            Self::from_coprime(
                t.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let cancel = |n: &Polynomial<F>, d: &Polynomial<F>| {
            if d.is_one() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::from_coprime(a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    fn square(&self) -> Self {
        RationalFunction {
            num: self.num.mul(&self.num),
            den: self.den.mul(&self.den),
        }
    }

    fn characteristic() -> u64 {
        F::characteristic()
    }
}

impl<F: Field> From<Polynomial<F>> for RationalFunction<F> {
    fn from(p: Polynomial<F>) -> Self {
        Self::from_poly(p)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = RationalFunction<Rational>;

    fn rf(text: &str) -> Q {
        Q::parse(text).unwrap()
    }

    #[test]
    fn normal_form() {
        let a = rf("(2*s^2 - 2)/(4*s - 4)");
        assert_eq!(a, rf("1/2*s + 1/2"));
        assert!(a.denom().is_one());
        let b = rf("(s)/(3*s^2 + 3)");
        assert_eq!(b.to_string(), "(1/3*s)/(s^2 + 1)");
        assert!(Q::parse("(s)/(0)").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = rf("(1)/(s - 1)");
        let b = rf("(1)/(s + 1)");
        assert_eq!(a.add(&b), rf("(2*s)/(s^2 - 1)"));
        assert_eq!(a.sub(&a), Q::zero());
        let c = rf("(s^2 - 1)/(s)");
        assert_eq!(Field::mul(&c, &a), rf("(s + 1)/(s)"));
        assert_eq!(Field::mul(&c, &c.inv().unwrap()), Q::one());
        // shared factors in the denominators
        let d = rf("(1)/(s^2 - 1)");
        assert_eq!(a.add(&d), rf("(s + 2)/(s^2 - 1)"));
        assert_eq!(a.sub(&rf("(1)/(s^2 - s)")), rf("(1)/(s)"));
    }

    #[test]
    fn composition_and_evaluation() {
        let a = rf("(s^2 + 1)/(s - 2)");
        let inv = rf("(1)/(s)");
        assert_eq!(a.compose(&inv), rf("(s^2 + 1)/(s - 2*s^2)"));
        assert_eq!(a.eval(&Rational::from(3)), Some(Rational::from(10)));
        assert_eq!(a.eval(&Rational::from(2)), None);
        assert_eq!(a.powi(-2).unwrap(), Field::square(&a.inv().unwrap()));
    }
}
