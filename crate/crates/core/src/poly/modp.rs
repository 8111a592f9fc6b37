//! Polynomials over `Z/pZ` for word-sized primes, lowest degree first.
//!
//! Used by the modular gcd, rational-root lifting, irreducibility tests and
//! the construction of extension-field moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub type ModPoly = Vec<u64>;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn powmod(mut a: u64, mut e: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, (p - 2) as u128, p))
    }
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i8 {
    match powmod(a % p, ((p - 1) / 2) as u128, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while n > 3 {
            let c = n;
            n -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    })
}

/// Odd primes starting at `from`, increasing.
pub fn small_primes(from: u64) -> impl Iterator<Item = u64> {
    (from.max(3)..).filter(|&n| is_prime(n))
}

pub fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

pub fn reduce(a: &[BigInt], p: u64) -> ModPoly {
    trim(a.iter().map(|c| reduce_int(c, p)).collect())
}

pub fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| addmod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| submod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = invmod(b[db], p).expect("leading coefficient invertible");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = mulmod(rem[i + db], inv, p);
        if c == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            rem[i + j] = submod(rem[i + j], mulmod(c, bc, p), p);
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    div_rem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, invmod(lc, p).expect("nonzero"), p),
    }
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[u64], p: u64) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x, p), c, p))
}

/// `base^e mod modulus`.
pub fn powmod_poly(base: &[u64], mut e: u128, modulus: &[u64], p: u64) -> ModPoly {
    let mut acc = vec![1 % p];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), modulus, p);
        }
    }
    trim(acc)
}

/// `x^(p^k) mod f`.
pub fn frobenius_power(f: &[u64], k: u32, p: u64) -> ModPoly {
    let mut x = vec![0, 1 % p];
    for _ in 0..k {
        x = powmod_poly(&x, p as u128, f, p);
    }
    rem(&x, f, p)
}

/// Degrees of the irreducible factors of a monic squarefree `f`
/// (distinct-degree factorization), sorted ascending.
pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = monic(f, p);
    let mut degrees = Vec::new();
    let mut xp = vec![0, 1 % p];
    let mut d = 0;
    while degree(&f).is_some_and(|n| n >= 2 * (d + 1)) {
        d += 1;
        xp = powmod_poly(&xp, p as u128, &f, p);
        let g = gcd(&f, &sub(&xp, &[0, 1], p), p);
        let gd = degree(&g).unwrap_or(0);
        if gd > 0 {
            for _ in 0..gd / d {
                degrees.push(d);
            }
            f = div_rem(&f, &g, p).0;
            xp = rem(&xp, &f, p);
        }
    }
    if let Some(n) = degree(&f) {
        if n > 0 {
            degrees.push(n);
        }
    }
    degrees.sort_unstable();
    degrees
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = monic(f, p);
    let x = vec![0, 1 % p];
    if frobenius_power(&f, n as u32, p) != rem(&x, &f, p) {
        return false;
    }
    let mut m = n;
    let mut prime_divisors = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            prime_divisors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divisors.push(m);
    }
    prime_divisors.into_iter().all(|r| {
        let h = frobenius_power(&f, (n / r) as u32, p);
        gcd(&f, &sub(&h, &x, p), p).len() == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(3_215_031_751));
        let p = large_primes().next().unwrap();
        assert!(p < 1 << 62 && is_prime(p));
    }

    #[test]
    fn distinct_degree_factorization() {
        // (x-1)(x^2+1) over F_11: x^2+1 is irreducible since 11 = 3 mod 4
        let f = mul(&[10, 1], &[1, 0, 1], 11);
        assert_eq!(factor_degrees(&f, 11), vec![1, 2]);
        assert!(is_irreducible(&[1, 0, 1], 11));
        assert!(!is_irreducible(&[1, 0, 1], 13));
    }
}
