//! Finite fields `F_q`, `q = p^n`, as `F_p[x]/(m(x))`.
//!
//! Elements have two representations. [`FFElement`] carries its coefficient
//! vector and a handle to the field. The counting kernel instead works on
//! `u32` indices `sum c_i p^i` and the field's log/exp and square tables, so
//! that the inner loop is table lookups only.

use std::fmt;
use std::sync::Arc;

use crate::error::CountError;
use crate::poly::modp;

/// Largest field order for which lookup tables are built.
pub const MAX_TABLE_ORDER: u64 = 1 << 26;

/// Field descriptor with precomputed tables.
pub struct FiniteField {
    p: u64,
    n: u32,
    /// Monic, lowest degree first, length `n + 1`.
    modulus: Vec<u64>,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    squares: Vec<u64>,
}

impl FiniteField {
    /// Build `F_{p^n}` with the modulus from [`find_irreducible`].
    pub fn new(p: u64, n: u32) -> Result<Arc<Self>, CountError> {
        if !modp::is_prime(p) || p == 2 {
            return Err(CountError::UnsupportedCharacteristic(p));
        }
        let q = (p as u128).checked_pow(n).filter(|&q| q <= MAX_TABLE_ORDER as u128);
        let Some(q) = q else {
            return Err(CountError::FieldTooLarge((p as u128).saturating_pow(n)));
        };
        let q = q as u64;
        let modulus = if n == 1 { vec![0, 1] } else { find_irreducible(p, n) };
        let mut field = FiniteField {
            p,
            n,
            modulus,
            q,
            exp: Vec::new(),
            log: Vec::new(),
            squares: Vec::new(),
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Defining polynomial (for `n = 1`, the polynomial `x`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        let g = (1..self.q as u32)
            .find(|&g| self.is_generator(g, order))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        let gv = self.coeffs_of(g);
        for k in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = k;
            cur = self.index_of(&self.mul_coeffs(&self.coeffs_of(cur), &gv));
        }
        // doubled so that exp[log a + log b] needs no reduction
        let first = exp.clone();
        exp.extend(first);
        let mut squares = vec![0u64; (self.q as usize).div_ceil(64)];
        for k in (0..order as usize).step_by(2) {
            let i = exp[k] as usize;
            squares[i / 64] |= 1 << (i % 64);
        }
        self.exp = exp;
        self.log = log;
        self.squares = squares;
    }

    fn is_generator(&self, g: u32, order: u64) -> bool {
        let gv = self.coeffs_of(g);
        prime_factors(order)
            .into_iter()
            .all(|r| self.pow_coeffs(&gv, order / r) != self.coeffs_of(1))
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = modp::rem(&modp::mul(a, b, self.p), &self.modulus, self.p);
        out.resize(self.n as usize, 0);
        out
    }

    fn pow_coeffs(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.coeffs_of(1);
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coeffs(&acc, &b);
            }
            b = self.mul_coeffs(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Coefficient vector (length `n`) of an index.
    pub fn coeffs_of(&self, mut i: u32) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let c = i as u64 % self.p;
                i /= self.p as u32;
                c
            })
            .collect()
    }

    pub fn index_of(&self, coeffs: &[u64]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c % self.p) as u32
    }

    /// Index of the prime-field element `a mod p`.
    pub fn index_of_int(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let s = (a % p + b % p) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg_idx(&self, a: u32) -> u32 {
        let p = self.p as u32;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((p - a % p) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 * (e % (self.q - 1))) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn inv_idx(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = (self.q - 1) as u32;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    /// Quadratic character by table lookup.
    #[inline]
    pub fn chi_idx(&self, a: u32) -> i8 {
        if a == 0 {
            0
        } else if self.squares[a as usize / 64] >> (a % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> FFElement {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        c = modp::rem(&c, &self.modulus, self.p);
        c.resize(self.n as usize, 0);
        FFElement {
            field: Arc::clone(self),
            coeffs: c,
        }
    }

    pub fn from_index(self: &Arc<Self>, i: u32) -> FFElement {
        FFElement {
            field: Arc::clone(self),
            coeffs: self.coeffs_of(i),
        }
    }

    pub fn from_int(self: &Arc<Self>, a: i64) -> FFElement {
        self.from_index(self.index_of_int(a))
    }

    pub fn zero(self: &Arc<Self>) -> FFElement {
        self.from_index(0)
    }

    pub fn one(self: &Arc<Self>) -> FFElement {
        self.from_index(1)
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.n, self.modulus)
    }
}

/// Every element of the field exactly once, in index order (the constant
/// coefficient varies fastest).
pub fn enumerate(field: &Arc<FiniteField>) -> impl Iterator<Item = FFElement> + '_ {
    (0..field.order() as u32).map(move |i| field.from_index(i))
}

/// A point of the projective line over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Point {
    Finite(u32),
    Infinity,
}

/// The `q + 1` points of `P^1(F_q)`: finite points in index order, then infinity.
pub fn projective_line(field: &FiniteField) -> impl Iterator<Item = P1Point> {
    (0..field.order() as u32)
        .map(P1Point::Finite)
        .chain(std::iter::once(P1Point::Infinity))
}

/// Element of a [`FiniteField`].
#[derive(Clone)]
pub struct FFElement {
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

impl FFElement {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u32 {
        self.field.index_of(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn with(&self, coeffs: Vec<u64>) -> FFElement {
        FFElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn add(&self, rhs: &FFElement) -> FFElement {
        let p = self.field.p;
        self.with(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| modp::addmod(a, b, p))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &FFElement) -> FFElement {
        let p = self.field.p;
        self.with(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| modp::submod(a, b, p))
                .collect(),
        )
    }

    pub fn neg(&self) -> FFElement {
        self.field.zero().sub(self)
    }

    pub fn mul(&self, rhs: &FFElement) -> FFElement {
        self.with(self.field.mul_coeffs(&self.coeffs, &rhs.coeffs))
    }

    pub fn pow(&self, e: u64) -> FFElement {
        self.with(self.field.pow_coeffs(&self.coeffs, e))
    }

    pub fn inv(&self) -> Option<FFElement> {
        (!self.is_zero()).then(|| self.pow(self.field.q - 2))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self) -> FFElement {
        self.pow(self.field.p)
    }

    /// Quadratic character from the square table.
    pub fn quadratic_character(&self) -> i8 {
        self.field.chi_idx(self.index())
    }

    /// Quadratic character by Euler's criterion, `a^((q-1)/2)`.
    pub fn euler_character(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let r = self.pow((self.field.q - 1) / 2);
        if r.index() == 1 {
            1
        } else {
            -1
        }
    }
}

impl PartialEq for FFElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FFElement {}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}*x^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Smallest monic irreducible polynomial of degree `n` over `F_p`, ordering
/// candidates by `(c_0, c_1, ..., c_{n-1})` with `c_0` most significant.
/// Returned lowest degree first.
pub fn find_irreducible(p: u64, n: u32) -> Vec<u64> {
    assert!(n >= 1, "degree must be positive");
    let n = n as usize;
    let total = (p as u128).pow(n as u32);
    (0..total)
        .map(|k| {
            let mut c = vec![0u64; n + 1];
            let mut k = k;
            for i in (0..n).rev() {
                c[i] = (k % p as u128) as u64;
                k /= p as u128;
            }
            c[n] = 1;
            c
        })
        .find(|c| has_no_small_factor(c, p))
        .expect("irreducible polynomials exist in every degree")
}

/// `gcd(f, x^(p^k) - x) = 1` for `k <= deg f / 2`.
fn has_no_small_factor(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let x = [0, 1];
    let mut xp = x.to_vec();
    for _ in 1..=n / 2 {
        xp = modp::powmod_poly(&xp, p as u128, f, p);
        if modp::gcd(f, &modp::sub(&xp, &x, p), p).len() != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(11, 2), vec![1, 0, 1]);
        let cubic = find_irreducible(11, 3);
        assert!(modp::is_irreducible(&cubic, 11));
        // no smaller candidate in the scan order is irreducible
        let key = |c: &[u64]| (c[0], c[1], c[2]);
        for c0 in 0..11 {
            for c1 in 0..11 {
                for c2 in 0..11 {
                    let cand = vec![c0, c1, c2, 1];
                    if key(&cand) < key(&cubic) {
                        assert!(!modp::is_irreducible(&cand, 11));
                    }
                }
            }
        }
        for (p, n) in [(5, 4), (7, 3), (13, 2)] {
            let f = find_irreducible(p, n);
            assert!(modp::is_irreducible(&f, p));
            let g = modp::gcd(&f, &modp::sub(&modp::powmod_poly(&[0, 1], p as u128, &f, p), &[0, 1], p), p);
            assert_eq!(g, vec![1]);
        }
    }

    #[test]
    fn characters() {
        let f = FiniteField::new(11, 1).unwrap();
        assert_eq!(f.from_int(3).quadratic_character(), 1);
        assert_eq!(f.from_int(0).quadratic_character(), 0);
        for n in 1..=3 {
            let f = FiniteField::new(11, n).unwrap();
            let sum: i64 = enumerate(&f).map(|a| a.quadratic_character() as i64).sum();
            assert_eq!(sum, 0);
            assert_eq!(enumerate(&f).count() as u64, f.order());
            assert_eq!(projective_line(&f).count() as u64, f.order() + 1);
        }
    }

    #[test]
    fn table_character_matches_euler() {
        let f = FiniteField::new(11, 3).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a = f.from_index(rng.gen_range(0..f.order() as u32));
            assert_eq!(a.quadratic_character(), a.euler_character());
        }
    }

    #[test]
    fn frobenius_is_a_homomorphism_fixing_the_prime_field() {
        for n in 1..=3 {
            let f = FiniteField::new(11, n).unwrap();
            let elems: Vec<FFElement> = enumerate(&f).collect();
            let fixed = elems.iter().filter(|a| a.frobenius() == **a).count();
            assert_eq!(fixed, 11);
            let g = f.from_index(f.order() as u32 - 2);
            for a in &elems {
                assert_eq!(a.add(&g).frobenius(), a.frobenius().add(&g.frobenius()));
                assert_eq!(a.mul(&g).frobenius(), a.frobenius().mul(&g.frobenius()));
            }
        }
    }

    #[test]
    fn index_arithmetic_matches_element_arithmetic() {
        let f = FiniteField::new(11, 2).unwrap();
        for a in (0..121).step_by(7) {
            for b in (0..121).step_by(5) {
                let (ea, eb) = (f.from_index(a), f.from_index(b));
                assert_eq!(f.mul_idx(a, b), ea.mul(&eb).index());
                assert_eq!(f.add_idx(a, b), ea.add(&eb).index());
                assert_eq!(f.sub_idx(a, b), ea.sub(&eb).index());
            }
            if a != 0 {
                assert_eq!(f.mul_idx(a, f.inv_idx(a).unwrap()), 1);
                assert_eq!(f.pow_idx(a, 5), f.from_index(a).pow(5).index());
            }
        }
    }

    #[test]
    fn rejects_unsupported_fields() {
        assert_eq!(FiniteField::new(2, 3).unwrap_err(), CountError::UnsupportedCharacteristic(2));
        assert!(matches!(FiniteField::new(11, 9), Err(CountError::FieldTooLarge(_))));
    }
}
