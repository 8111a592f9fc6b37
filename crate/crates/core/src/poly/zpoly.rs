//! Integer coefficient vectors, used behind the fast paths for `Q[x]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::arith::{denominator_lcm, Rational};

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Scale by the lcm of denominators: returns `(ints, den)` with `a = ints / den`.
pub fn clear_denominators(a: &[Rational]) -> (ZPoly, BigInt) {
    let den = denominator_lcm(a);
    let ints = a
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `a = content * primitive`, with the primitive part's leading coefficient positive.
pub fn content_primitive(a: &[BigInt]) -> (BigInt, ZPoly) {
    let mut c = content(a);
    if c.is_zero() {
        return (c, Vec::new());
    }
    if a.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        c = -c;
    }
    let prim = a.iter().map(|x| x / &c).collect();
    (c, trim(prim))
}

pub fn to_rational(a: &[BigInt]) -> Polynomial<Rational> {
    Polynomial::new(a.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

pub fn from_rational_primitive(p: &Polynomial<Rational>) -> ZPoly {
    let (ints, _) = clear_denominators(p.coeffs());
    content_primitive(&ints).1
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() >= KARATSUBA_CUTOFF && b.len() >= KARATSUBA_CUTOFF {
        return trim(karatsuba(a, b));
    }
    trim(schoolbook(a, b))
}

const KARATSUBA_CUTOFF: usize = 32;

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn add_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

fn karatsuba(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let split = |p: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
        if p.len() <= half {
            (p.to_vec(), Vec::new())
        } else {
            (p[..half].to_vec(), p[half..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    if a1.is_empty() || b1.is_empty() {
        return schoolbook(a, b);
    }
    let z0 = karatsuba(&a0, &b0);
    let z2 = karatsuba(&a1, &b1);
    let sum = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let n = x.len().max(y.len());
        (0..n)
            .map(|i| {
                x.get(i).cloned().unwrap_or_default() + y.get(i).cloned().unwrap_or_default()
            })
            .collect()
    };
    let mut z1 = karatsuba(&sum(&a0, &a1), &sum(&b0, &b1));
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &z0);
    let room = out.len() - half;
    add_into(&mut out[half..], &z1[..z1.len().min(room)]);
    add_into(&mut out[2 * half..], &z2);
    out
}

/// Exact quotient `a / b` in `Z[x]`, or `None` if `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let b = trim(b.to_vec());
    let a = trim(a.to_vec());
    let db = b.len().checked_sub(1)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() <= db {
        return None;
    }
    let lc = &b[db];
    let mut rem = a;
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &q * bc;
        }
        quot[i] = q;
    }
    rem[..db].iter().all(|c| c.is_zero()).then(|| trim(quot))
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Evaluate the homogenization `sum a_k num^k den^(d-k)`, i.e. `den^d * a(num/den)`.
pub fn eval_homogeneous(a: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for c in a.iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    acc
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Largest absolute value of a coefficient.
pub fn max_norm(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn karatsuba_agrees_with_schoolbook() {
        let a: ZPoly = (0..70).map(|i| BigInt::from((i * 37 % 23) as i64 - 11)).collect();
        let b: ZPoly = (0..45).map(|i| BigInt::from((i * 19 % 17) as i64 - 8)).collect();
        assert_eq!(trim(karatsuba(&a, &b)), trim(schoolbook(&a, &b)));
    }

    #[test]
    fn exact_division() {
        let a = mul(&z(&[1, 2, 3]), &z(&[-5, 0, 7]));
        assert_eq!(div_exact(&a, &z(&[-5, 0, 7])), Some(z(&[1, 2, 3])));
        assert_eq!(div_exact(&z(&[1, 0, 1]), &z(&[1, 1])), None);
        assert_eq!(div_exact(&z(&[1, 0, 2]), &z(&[0, 2])), None);
    }

    #[test]
    fn homogeneous_evaluation() {
        // 2x^2 - 3x + 1 at 3/2, scaled by 2^2: 2*9 - 3*3*2 + 4 = 4
        let a = z(&[1, -3, 2]);
        assert_eq!(eval_homogeneous(&a, &BigInt::from(3), &BigInt::from(2)), BigInt::from(4));
    }
}
