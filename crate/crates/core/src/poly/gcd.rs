//! Polynomial gcd: a generic Euclidean algorithm, and a modular algorithm for
//! `Q[x]` that avoids coefficient swell on the large rational functions met
//! when multiplying sections.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{modp, zpoly, Polynomial};
use crate::arith::{Field, GaussianRational, Rational};

/// Monic gcd by the Euclidean algorithm; `gcd(a, 0) = monic(a)`.
pub fn euclid<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    a.monic()
}

/// Monic gcd over `Q`, computed modulo 62-bit primes and lifted by CRT.
pub fn rational_gcd(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Polynomial<Rational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let za = zpoly::from_rational_primitive(a);
    let zb = zpoly::from_rational_primitive(b);
    zpoly::to_rational(&integer_gcd(&za, &zb)).monic()
}

/// Primitive gcd of two primitive, nonconstant integer polynomials.
pub fn integer_gcd(a: &[BigInt], b: &[BigInt]) -> zpoly::ZPoly {
    let lc_a = a.last().expect("nonzero");
    let lc_b = b.last().expect("nonzero");
    let scale = lc_a.gcd(lc_b);

    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut previous: Option<zpoly::ZPoly> = None;

    for p in modp::large_primes() {
        if modp::reduce_int(lc_a, p) == 0 || modp::reduce_int(lc_b, p) == 0 {
            continue;
        }
        let g = modp::gcd(&modp::reduce(a, p), &modp::reduce(b, p), p);
        let d = modp::degree(&g).expect("gcd of nonzero polynomials");
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > best_deg {
            // unlucky prime
            continue;
        }
        let g = modp::scale(&g, modp::reduce_int(&scale, p), p);
        let mut g_full = g.clone();
        g_full.resize(d + 1, 0);
        if d < best_deg {
            best_deg = d;
            modulus = BigInt::from(p);
            residues = g_full.iter().map(|&c| BigInt::from(c)).collect();
            previous = None;
            continue;
        }
        crt_combine(&mut residues, &mut modulus, &g_full, p);
        let candidate = symmetric(&residues, &modulus);
        if previous.as_ref() == Some(&candidate) {
            let prim = zpoly::content_primitive(&candidate).1;
            if zpoly::div_exact(a, &prim).is_some() && zpoly::div_exact(b, &prim).is_some() {
                return prim;
            }
        }
        previous = Some(candidate);
    }
    unreachable!("prime supply exhausted")
}

/// Monic gcd over `Q(i)`. Modulo a prime `p = 1 mod 4` the two square roots
/// `+-r` of `-1` give images `u = a + b r` and `w = a - b r` of each coefficient
/// `a + b i`; real and imaginary parts are recovered by CRT and rational
/// reconstruction.
pub fn gaussian_gcd(
    a: &Polynomial<GaussianRational>,
    b: &Polynomial<GaussianRational>,
) -> Polynomial<GaussianRational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut previous: Option<Polynomial<GaussianRational>> = None;

    for p in modp::large_primes().filter(|p| p % 4 == 1) {
        let r = sqrt_minus_one(p);
        let images = [r, p - r].map(|e| (gaussian_image(a, e, p), gaussian_image(b, e, p)));
        let Some(g) = images
            .iter()
            .map(|(x, y)| Some(modp::gcd(x.as_ref()?, y.as_ref()?, p)))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let d = modp::degree(&g[0]).expect("gcd of nonzero polynomials");
        if d == 0 && modp::degree(&g[1]) == Some(0) {
            return Polynomial::one();
        }
        if modp::degree(&g[1]) != Some(d) || d > best_deg {
            continue;
        }
        let half = modp::invmod(2, p).expect("odd prime");
        let half_r = modp::invmod(modp::mulmod(2, r, p), p).expect("unit");
        let mut parts = vec![0u64; 2 * (d + 1)];
        for k in 0..=d {
            let (u, w) = (g[0][k], g[1][k]);
            parts[k] = modp::mulmod(modp::addmod(u, w, p), half, p);
            parts[d + 1 + k] = modp::mulmod(modp::submod(u, w, p), half_r, p);
        }
        if d < best_deg {
            best_deg = d;
            modulus = BigInt::from(p);
            residues = parts.iter().map(|&c| BigInt::from(c)).collect();
            previous = None;
            continue;
        }
        crt_combine(&mut residues, &mut modulus, &parts, p);
        let candidate = (0..=d)
            .map(|k| {
                Some(GaussianRational::new(
                    rational_reconstruction(&residues[k], &modulus)?,
                    rational_reconstruction(&residues[d + 1 + k], &modulus)?,
                ))
            })
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new);
        if let Some(c) = candidate {
            if previous.as_ref() == Some(&c) && c.divides(a) && c.divides(b) {
                return c;
            }
            previous = Some(c);
        }
    }
    unreachable!("prime supply exhausted")
}

fn sqrt_minus_one(p: u64) -> u64 {
    let g = (2..p).find(|&g| modp::legendre(g, p) == -1).expect("nonresidue exists");
    modp::powmod(g, ((p - 1) / 4) as u128, p)
}

/// Image under `i -> e`; `None` when a denominator or the leading coefficient vanishes.
fn gaussian_image(a: &Polynomial<GaussianRational>, e: u64, p: u64) -> Option<modp::ModPoly> {
    let reduce = |q: &Rational| -> Option<u64> {
        let den = modp::invmod(modp::reduce_int(q.denom(), p), p)?;
        Some(modp::mulmod(modp::reduce_int(q.numer(), p), den, p))
    };
    let mut out = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        out.push(modp::addmod(reduce(&c.re)?, modp::mulmod(reduce(&c.im)?, e, p), p));
    }
    if out.last() == Some(&0) {
        return None;
    }
    Some(out)
}

/// The rational `n/d` with `|n|, d <= sqrt(m/2)` congruent to `r` mod `m`.
pub fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::from(0), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1 == BigInt::from(0) || t1.magnitude() > bound.magnitude() || r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn crt_combine(residues: &mut [BigInt], modulus: &mut BigInt, g: &[u64], p: u64) {
    let m_mod_p = modp::reduce_int(modulus, p);
    let inv = modp::invmod(m_mod_p, p).expect("distinct primes");
    for (r, &gp) in residues.iter_mut().zip(g) {
        let r_mod_p = modp::reduce_int(r, p);
        let t = modp::mulmod(modp::submod(gp, r_mod_p, p), inv, p);
        *r += &*modulus * BigInt::from(t);
    }
    *modulus *= BigInt::from(p);
}

fn symmetric(residues: &[BigInt], modulus: &BigInt) -> zpoly::ZPoly {
    let half: BigInt = modulus >> 1;
    zpoly::trim(
        residues
            .iter()
            .map(|r| {
                let r = r.mod_floor(modulus);
                if r > half {
                    r - modulus
                } else {
                    r
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> Polynomial<Rational> {
        Polynomial::parse(text).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(p("s^2 - 1").gcd(&p("s^2 - 2*s + 1")), p("s - 1"));
        assert_eq!(p("3*s^2 - 3").gcd(&Polynomial::zero()), p("s^2 - 1"));
        assert_eq!(p("s^2 + 1").gcd(&p("s^2 - 1")), p("1"));
    }

    #[test]
    fn modular_matches_euclid() {
        let common = p("7/3*s^3 - 12*s + 5");
        let a = common.mul(&p("s^4 - 11*s + 1/2")).mul(&p("s - 9"));
        let b = common.mul(&p("2*s^5 + 3*s^2 - 1")).mul(&p("s - 9"));
        let fast = rational_gcd(&a, &b);
        assert_eq!(fast, euclid(&a, &b));
        assert_eq!(fast, common.mul(&p("s - 9")).monic());
    }

    #[test]
    fn large_coefficients() {
        let big = p("123456789012345678901234567890*s^2 - 98765432109876543210987654321*s + 1");
        let a = big.pow(3).mul(&p("s + 1"));
        let b = big.pow(2).mul(&p("s - 1"));
        assert_eq!(rational_gcd(&a, &b), big.pow(2).monic());
    }

    fn factor() -> impl Strategy<Value = Polynomial<Rational>> {
        prop_oneof![
            (-4i64..5).prop_map(|c| Polynomial::from_i64s(&[c, 1])),
            (-3i64..4, -3i64..4).prop_map(|(b, c)| Polynomial::from_i64s(&[c, b, 1])),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn gcd_is_the_largest_common_divisor(
            fa in prop::collection::vec(factor(), 1..4),
            fb in prop::collection::vec(factor(), 1..4),
        ) {
            let prod = |fs: &[Polynomial<Rational>]| fs.iter().fold(Polynomial::one(), |acc, f| acc.mul(f));
            let (a, b) = (prod(&fa), prod(&fb));
            let g = a.gcd(&b);
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert_eq!(&g, &euclid(&a, &b));
            // every product of factors of `a` of degree <= 3 dividing `b` divides the gcd
            for mask in 1u32..(1 << fa.len()) {
                let d = prod(&fa.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone()).collect::<Vec<_>>());
                if d.degree().unwrap_or(0) <= 3 && d.divides(&b) {
                    prop_assert!(d.divides(&g));
                }
            }
        }
    }

    fn gaussian(coeffs: &[(i64, i64)]) -> Polynomial<GaussianRational> {
        Polynomial::new(coeffs.iter().map(|&(a, b)| GaussianRational::new(Rational::from(a), Rational::from(b))).collect())
    }

    #[test]
    fn rational_reconstruction_inverts_reduction() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let inv = BigInt::from(113).extended_gcd(&m).x;
        let x = (BigInt::from(-355) * inv).mod_floor(&m);
        assert_eq!(rational_reconstruction(&x, &m), Some(Rational::new(-355, 113)));
        assert_eq!(rational_reconstruction(&BigInt::from(7), &BigInt::from(11)), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn gaussian_gcd_matches_euclid(
            common in prop::collection::vec((-3i64..4, -3i64..4), 1..4),
            u in prop::collection::vec((-5i64..6, -5i64..6), 1..5),
            v in prop::collection::vec((-5i64..6, -5i64..6), 1..5),
        ) {
            let c = gaussian(&common);
            let (a, b) = (c.mul(&gaussian(&u)), c.mul(&gaussian(&v)));
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(gaussian_gcd(&a, &b), euclid(&a, &b));
        }
    }
}
