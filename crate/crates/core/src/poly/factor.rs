//! Squarefree decomposition, rational roots and small-degree irreducibility.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{modp, zpoly, Polynomial};
use crate::arith::{Field, Rational};
use crate::error::AlgebraError;

/// Largest degree [`is_irreducible_small`] will certify.
pub const MAX_CERTIFIED_DEGREE: usize = 8;

/// `unit * prod(f_i ^ m_i)` with monic, squarefree, pairwise coprime `f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeFactorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(Polynomial<F>, usize)>,
}

impl<F: Field> SquarefreeFactorization<F> {
    pub fn expand(&self) -> Polynomial<F> {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (f, m)| {
                acc.mul(&f.pow(*m as u32))
            })
    }
}

/// Yun's algorithm. Factors with equal multiplicity come out multiplied
/// together; characteristic zero is assumed.
pub fn yun<F: Field>(a: &Polynomial<F>) -> Result<SquarefreeFactorization<F>, AlgebraError> {
    let unit = a.lc().cloned().ok_or(AlgebraError::ZeroPolynomial)?;
    let f = a.monic();
    let mut factors = Vec::new();
    if f.degree() == Some(0) {
        return Ok(SquarefreeFactorization { unit, factors });
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut b = f.div_exact(&g).expect("gcd divides");
    let c = df.div_exact(&g).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_one() {
        let ai = b.gcd(&d);
        b = b.div_exact(&ai).expect("gcd divides");
        let c = d.div_exact(&ai).expect("gcd divides");
        d = c.sub(&b.derivative());
        if !ai.is_one() {
            factors.push((ai, i));
        }
        i += 1;
    }
    Ok(SquarefreeFactorization { unit, factors })
}

/// Squarefree decomposition over `Q` with rational linear factors split off,
/// ordered by multiplicity (descending), then degree, then root.
pub fn squarefree_factor(
    a: &Polynomial<Rational>,
) -> Result<SquarefreeFactorization<Rational>, AlgebraError> {
    let base = yun(a)?;
    let mut factors = Vec::new();
    for (f, m) in base.factors {
        let mut rest = f;
        for r in squarefree_roots(&rest) {
            let lin = Polynomial::linear_root(&r);
            rest = rest.div_exact(&lin).expect("root divides");
            factors.push((lin, m));
        }
        if !rest.is_constant() {
            factors.push((rest, m));
        }
    }
    factors.sort_by(|(f, m), (g, n)| {
        n.cmp(m)
            .then(f.degree().cmp(&g.degree()))
            .then_with(|| g.coeff(0).cmp(&f.coeff(0)))
    });
    Ok(SquarefreeFactorization {
        unit: base.unit,
        factors,
    })
}

/// All rational roots, repeated by multiplicity, in increasing order.
pub fn rational_roots(a: &Polynomial<Rational>) -> Result<Vec<Rational>, AlgebraError> {
    let sf = yun(a)?;
    let mut roots = Vec::new();
    for (f, m) in &sf.factors {
        for r in squarefree_roots(f) {
            roots.extend(std::iter::repeat(r).take(*m));
        }
    }
    roots.sort();
    Ok(roots)
}

/// Rational roots of a squarefree polynomial, by Hensel lifting a root
/// modulo a small prime and rational reconstruction.
fn squarefree_roots(a: &Polynomial<Rational>) -> Vec<Rational> {
    let mut f = zpoly::from_rational_primitive(a);
    let mut roots = Vec::new();
    if f.len() < 2 {
        return roots;
    }
    if f[0].is_zero() {
        roots.push(Rational::zero());
        f.remove(0);
    }
    if f.len() == 2 {
        roots.push(Rational::new(-f[0].clone(), f[1].clone()));
    } else if f.len() > 2 {
        roots.extend(lifted_roots(&f));
    }
    roots.sort();
    roots
}

fn good_prime(f: &[BigInt]) -> u64 {
    let df = zpoly::derivative(f);
    modp::small_primes(5)
        .find(|&l| {
            let fl = modp::reduce(f, l);
            fl.len() == f.len() && modp::gcd(&fl, &modp::reduce(&df, l), l).len() == 1
        })
        .expect("a squarefree polynomial has a good prime")
}

fn lifted_roots(f: &[BigInt]) -> Vec<Rational> {
    let l = good_prime(f);
    let fl = modp::reduce(f, l);
    let xl = modp::powmod_poly(&[0, 1], l as u128, &fl, l);
    let split = modp::gcd(&fl, &modp::sub(&xl, &[0, 1], l), l);
    if split.len() <= 1 {
        return Vec::new();
    }
    let num_bound = f[0].abs();
    let den_bound = f.last().expect("nonzero").abs();
    let target: BigInt = BigInt::from(2) * &num_bound * &den_bound;
    let df = zpoly::derivative(f);
    let mut out = Vec::new();
    for r0 in 0..l {
        if modp::eval(&split, r0, l) != 0 {
            continue;
        }
        let mut modulus = BigInt::from(l);
        let mut r = BigInt::from(r0);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let fr = zpoly::eval(f, &r).mod_floor(&modulus);
            let dfr = zpoly::eval(&df, &r).mod_floor(&modulus);
            let inv = mod_inverse(&dfr, &modulus).expect("simple root lifts");
            r = (r - fr * inv).mod_floor(&modulus);
        }
        if let Some((u, v)) = reconstruct(&r, &modulus, &num_bound, &den_bound) {
            if zpoly::eval_homogeneous(f, &u, &v).is_zero() {
                out.push(Rational::new(u, v));
            }
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `u / v` with `u = r v (mod m)`, `|u| <= n`, `0 < v <= d`.
fn reconstruct(r: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (u, v) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    (!v.is_zero() && &v <= d && u.gcd(&v).is_one()).then_some((u, v))
}

/// Rational roots by enumerating `±p/q` with `p | a_0` and `q | a_n`.
/// Only usable when both coefficients factor by trial division below
/// `10^6`; returns `None` otherwise.
pub fn rational_roots_by_divisors(a: &Polynomial<Rational>) -> Option<Vec<Rational>> {
    let f = zpoly::from_rational_primitive(a);
    if f.is_empty() {
        return None;
    }
    let mut f = f.as_slice();
    let mut roots = Vec::new();
    while f.len() > 1 && f[0].is_zero() {
        roots.push(Rational::zero());
        f = &f[1..];
    }
    let nums = divisors(&f[0])?;
    let dens = divisors(f.last().expect("nonzero"))?;
    let mut f = f.to_vec();
    let mut candidates = BTreeSet::new();
    for p in &nums {
        for q in &dens {
            candidates.insert(Rational::new(p.clone(), q.clone()));
            candidates.insert(Rational::new(-p.clone(), q.clone()));
        }
    }
    for c in candidates {
        let lin = [-c.numer().clone(), c.denom().clone()];
        while f.len() > 1 {
            match zpoly::div_exact(&f, &lin) {
                Some(q) => {
                    roots.push(c.clone());
                    f = q;
                }
                None => break,
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= n {
        if p > limit {
            return None;
        }
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    Some(out)
}

/// Whether a polynomial of degree at most 8 is irreducible over `Q`.
///
/// Linear factors are excluded by root search; larger factors by comparing
/// factor-degree patterns modulo primes. If some split survives every prime
/// tried the answer is [`AlgebraError::Inconclusive`].
pub fn is_irreducible_small(a: &Polynomial<Rational>) -> Result<bool, AlgebraError> {
    let n = a.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n > MAX_CERTIFIED_DEGREE {
        return Err(AlgebraError::DegreeUnsupported(n, MAX_CERTIFIED_DEGREE));
    }
    match n {
        0 => return Ok(false),
        1 => return Ok(true),
        _ => {}
    }
    if !a.gcd(&a.derivative()).is_one() {
        return Ok(false);
    }
    if !squarefree_roots(a).is_empty() {
        return Ok(false);
    }
    if n <= 3 {
        return Ok(true);
    }
    let f = zpoly::from_rational_primitive(a);
    let df = zpoly::derivative(&f);
    // degrees a proper factor of minimal degree could still have
    let mut open: BTreeSet<usize> = (2..=n / 2).collect();
    for l in modp::small_primes(3).take(60) {
        let fl = modp::reduce(&f, l);
        if modp::degree(&fl) != Some(n) || modp::gcd(&fl, &modp::reduce(&df, l), l).len() != 1 {
            continue;
        }
        let sums = subset_sums(&modp::factor_degrees(&fl, l));
        open.retain(|d| sums.contains(d));
        if open.is_empty() {
            return Ok(true);
        }
    }
    Err(AlgebraError::Inconclusive(a.to_string()))
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in degrees {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> Polynomial<Rational> {
        Polynomial::parse(text).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn squarefree_examples() {
        let sf = squarefree_factor(&p("s^2")).unwrap();
        assert_eq!(sf.factors, vec![(p("s"), 2)]);
        let sf = squarefree_factor(&p("s^2 - 1").mul(&p("s - 1"))).unwrap();
        assert_eq!(sf.factors, vec![(p("s - 1"), 2), (p("s + 1"), 1)]);
        assert!(squarefree_factor(&Polynomial::zero()).is_err());
    }

    #[test]
    fn content_is_tracked() {
        let a = p("-6*s^3 + 6*s").mul(&p("1/5*s + 2"));
        let sf = squarefree_factor(&a).unwrap();
        assert_eq!(sf.expand(), a);
        assert_eq!(sf.unit, r(-6, 5));
    }

    #[test]
    fn roots() {
        let a = p("s - 1").pow(2).mul(&p("s^2 + 1"));
        assert_eq!(rational_roots(&a).unwrap(), vec![r(1, 1), r(1, 1)]);
        let q = p("s^4 + 2*s^3 - 26*s^2 + 54*s - 27");
        assert_eq!(rational_roots(&q).unwrap(), vec![]);
        let b = p("6*s^3 - 5*s^2 - 2*s + 1").mul(&p("s"));
        assert_eq!(rational_roots(&b).unwrap(), vec![r(-1, 2), r(0, 1), r(1, 3), r(1, 1)]);
    }

    #[test]
    fn divisor_oracle() {
        let a = p("12*s^4 - 7*s^3 - 14*s^2 + 7*s + 2").mul(&p("s + 2"));
        assert_eq!(
            rational_roots_by_divisors(&a).unwrap(),
            rational_roots(&a).unwrap()
        );
    }

    #[test]
    fn irreducibility() {
        let q = p("s^4 + 2*s^3 - 26*s^2 + 54*s - 27");
        assert_eq!(is_irreducible_small(&q), Ok(true));
        assert_eq!(is_irreducible_small(&p("s^2 - 1")), Ok(false));
        assert_eq!(is_irreducible_small(&p("s^2 + 1")), Ok(true));
        assert_eq!(is_irreducible_small(&p("s^5 - s - 1")), Ok(true));
        assert!(matches!(
            is_irreducible_small(&p("s^9 + 1")),
            Err(AlgebraError::DegreeUnsupported(9, 8))
        ));
        // x^4 + 1 splits modulo every prime, so patterns cannot decide it
        assert!(matches!(
            is_irreducible_small(&p("s^4 + 1")),
            Err(AlgebraError::Inconclusive(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn squarefree_factorization_reassembles(
            roots in prop::collection::vec((-5i64..6, 1u32..4), 1..4),
            unit in (-9i64..10).prop_filter("nonzero", |u| *u != 0),
            den in 1i64..7,
        ) {
            let a = roots
                .iter()
                .fold(Polynomial::constant(Rational::new(unit, den)), |acc, (c, m)| {
                    acc.mul(&Polynomial::from_i64s(&[*c, 1]).pow(*m))
                })
                .mul(&Polynomial::from_i64s(&[1, 0, 1]));
            let sf = squarefree_factor(&a).unwrap();
            prop_assert_eq!(sf.expand(), a);
            prop_assert!(sf.factors.iter().all(|(f, _)| f.is_monic()));
        }
    }
}
