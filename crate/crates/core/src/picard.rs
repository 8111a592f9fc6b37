//! Point counts over `F_{p^n}`, Frobenius traces, and the Picard number bound.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Field, Rational};
use crate::error::{CountError, VerifyError};
use crate::finite_field::{projective_line, FiniteField, P1Point};
use crate::poly::{modp, Polynomial};

/// Betti numbers `b_0 .. b_4` of the K3 surface.
pub const BETTI: [u32; 5] = [1, 0, 22, 0, 1];

/// Rank of the part of `H^2` spanned by the trivial lattice and the visible sections.
pub const KNOWN_RANK: u32 = 18;

/// Environment variable overriding the worker count of [`count_surface`].
pub const THREADS_ENV: &str = "HERON_THREADS";

/// Fiber type over a point of `P^1(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberKind {
    Smooth,
    I1,
    IV,
    I6,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    /// `"oo"` or the index of the field element.
    pub s: String,
    pub kind: FiberKind,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    #[serde(serialize_with = "as_string")]
    pub count: u64,
    pub fibers: Vec<FiberCount>,
}

fn as_string<S: serde::Serializer, T: ToString>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&v.to_string())
}

impl CountReport {
    /// Smooth fibers whose count violates `|N - q - 1| <= 2 sqrt(q)`.
    pub fn hasse_violations(&self) -> Vec<&FiberCount> {
        self.fibers
            .iter()
            .filter(|f| f.kind == FiberKind::Smooth && !within_hasse(f.count, self.q))
            .collect()
    }
}

/// `(N - q - 1)^2 <= 4q`.
pub fn within_hasse(count: u64, q: u64) -> bool {
    let a = count as i128 - q as i128 - 1;
    a * a <= 4 * q as i128
}

fn idx(field: &FiniteField, a: i64) -> u32 {
    field.index_of_int(a)
}

/// `s^4 + 2 s^3 - 26 s^2 + 54 s - 27` at `s`.
fn quartic_at(field: &FiniteField, s: u32) -> u32 {
    let mut acc = 0;
    for c in [1, 2, -26, 54, -27] {
        acc = field.add_idx(field.mul_idx(acc, s), idx(field, c));
    }
    acc
}

pub fn fiber_kind(field: &FiniteField, s: P1Point) -> FiberKind {
    match s {
        P1Point::Infinity => FiberKind::I6,
        P1Point::Finite(s) if s == idx(field, 1) => FiberKind::I6,
        P1Point::Finite(s) if s == 0 || s == idx(field, -1) => FiberKind::IV,
        P1Point::Finite(s) if quartic_at(field, s) == 0 => FiberKind::I1,
        P1Point::Finite(_) => FiberKind::Smooth,
    }
}

/// Number of `F_q`-points on the fiber over `s`.
pub fn count_fiber(field: &FiniteField, s: P1Point) -> u64 {
    let q = field.order();
    match fiber_kind(field, s) {
        FiberKind::I6 => 6 * q,
        FiberKind::IV => 3 * q + 1,
        FiberKind::Smooth | FiberKind::I1 => {
            let P1Point::Finite(s) = s else { unreachable!() };
            count_weierstrass(field, s)
        }
    }
}

/// `1 + sum_x (1 + chi(F(x)))` with `F(x) = (x - 4(s-1)^2)^3 + s^2 (s+1)^2 x^2`.
fn count_weierstrass(field: &FiniteField, s: u32) -> u64 {
    let sm1 = field.sub_idx(s, 1);
    let c = field.mul_idx(idx(field, 4), field.mul_idx(sm1, sm1));
    let ss1 = field.mul_idx(s, field.add_idx(s, 1));
    let d = field.mul_idx(ss1, ss1);
    let mut total: i64 = 1;
    for x in 0..field.order() as u32 {
        let u = field.sub_idx(x, c);
        let cube = field.mul_idx(u, field.mul_idx(u, u));
        let f = field.add_idx(cube, field.mul_idx(d, field.mul_idx(x, x)));
        total += 1 + field.chi_idx(f) as i64;
    }
    total as u64
}

fn worker_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
}

/// Sum of fiber counts over `P^1(F_{p^n})`. Fibers are counted in parallel
/// and summed in a fixed order.
pub fn count_surface(p: u64, n: u32) -> Result<CountReport, CountError> {
    if p <= 3 {
        return Err(CountError::UnsupportedCharacteristic(p));
    }
    let field = FiniteField::new(p, n)?;
    let run = || count_all(&field);
    let fibers = match worker_pool() {
        Some(pool) => pool.install(run),
        None => run(),
    };
    let count = fibers.iter().map(|f| f.count).sum();
    Ok(CountReport {
        p,
        n,
        q: field.order(),
        count,
        fibers,
    })
}

fn count_all(field: &Arc<FiniteField>) -> Vec<FiberCount> {
    let line: Vec<P1Point> = projective_line(field).collect();
    line.par_iter()
        .map(|&s| FiberCount {
            s: match s {
                P1Point::Finite(i) => i.to_string(),
                P1Point::Infinity => "oo".to_string(),
            },
            kind: fiber_kind(field, s),
            count: count_fiber(field, s),
        })
        .collect()
}

/// Points of `t^2 (x + y + z)^3 = x y z` in `P^2(F_q)` by enumeration.
pub fn brute_force_cubic(field: &FiniteField, t: u32) -> u64 {
    let q = field.order() as u32;
    let t2 = field.mul_idx(t, t);
    let on = |x: u32, y: u32, z: u32| {
        let sum = field.add_idx(field.add_idx(x, y), z);
        let lhs = field.mul_idx(t2, field.mul_idx(sum, field.mul_idx(sum, sum)));
        lhs == field.mul_idx(x, field.mul_idx(y, z))
    };
    let mut n = 0;
    // [x : y : 1], [x : 1 : 0], [1 : 0 : 0]
    for x in 0..q {
        for y in 0..q {
            n += on(x, y, 1) as u64;
        }
        n += on(x, 1, 0) as u64;
    }
    n + on(1, 0, 0) as u64
}

/// The plane parameter `t = (s - 1) / (s (s + 1))` over `F_q`.
pub fn plane_parameter_idx(field: &FiniteField, s: u32) -> Option<u32> {
    let den = field.mul_idx(s, field.add_idx(s, 1));
    Some(field.mul_idx(field.sub_idx(s, 1), field.inv_idx(den)?))
}

/// The other `s'` with the same plane parameter: `s s' = 1 / t`.
pub fn base_change_partner(field: &FiniteField, s: u32) -> Option<u32> {
    let t = plane_parameter_idx(field, s)?;
    field.inv_idx(field.mul_idx(t, s))
}

/// Traces of Frobenius on `H^2` and their split into known and residual blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub n: u32,
    pub count: i128,
    pub trace: i128,
    pub known: i128,
    pub residual: i128,
}

/// `t_n = N_n - 1 - p^{2n}`; the known block contributes `17 p^n + e^n p^n`
/// where `e = (-1/p)` is the action on the class defined over `Q(i)`.
pub fn traces_report(p: u64, counts: &[u64]) -> Result<Vec<TraceRow>, CountError> {
    if counts.len() < 3 {
        return Err(CountError::MissingCounts);
    }
    let e = modp::legendre(p - 1, p) as i128;
    let p = p as i128;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let n = i as u32 + 1;
            let pn = p.pow(n);
            let c = c as i128;
            let trace = c - 1 - pn * pn;
            let known = 17 * pn + e.pow(n) * pn;
            TraceRow {
                n,
                count: c,
                trace,
                known,
                residual: trace - known,
            }
        })
        .collect())
}

/// Characteristic polynomial of Frobenius on the residual block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    /// `X^4 + c1 X^3 + c2 X^2 + c3 X + c4` as `[c1, c2, c3, c4]`.
    pub coeffs: [i128; 4],
    /// Sign of `c4 / p^4`.
    pub sign: i8,
    /// Both signs satisfy the magnitude test; `+` was chosen.
    pub ambiguous: bool,
}

impl CharPoly {
    pub fn polynomial(&self) -> Polynomial<Rational> {
        let [c1, c2, c3, c4] = self.coeffs;
        Polynomial::new(
            [c4, c3, c2, c1, 1]
                .iter()
                .map(|&c| Rational::from_integer(num_bigint::BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_even(&self) -> bool {
        self.coeffs[0] == 0 && self.coeffs[2] == 0
    }
}

/// Newton identities for a 4-dimensional block, with `c4 = +-p^4` fixed by
/// requiring every root to have absolute value `p`.
pub fn newton_char_poly(residual: &[i128], dim: usize, p: u64) -> Result<CharPoly, CountError> {
    if dim != 4 {
        return Err(CountError::UnsupportedDimension(dim));
    }
    let [r1, r2, r3] = match residual {
        [a, b, c, ..] => [*a, *b, *c],
        _ => return Err(CountError::MissingCounts),
    };
    let e2 = r1 * r1 - r2;
    let e3 = r1 * r1 * r1 - 3 * r1 * r2 + 2 * r3;
    if e2 % 2 != 0 || e3 % 6 != 0 {
        return Err(CountError::NoValidSign);
    }
    let (c1, c2, c3) = (-r1, e2 / 2, -e3 / 6);
    let p = p as i128;
    let p2 = p * p;
    let plus = roots_on_circle(c1, c2, c3, 1, p);
    let minus = roots_on_circle(c1, c2, c3, -1, p);
    let sign = match (plus, minus) {
        (true, _) => 1,
        (false, true) => -1,
        (false, false) => return Err(CountError::NoValidSign),
    };
    Ok(CharPoly {
        coeffs: [c1, c2, c3, sign as i128 * p2 * p2],
        sign,
        ambiguous: plus && minus,
    })
}

/// Exact test that `X^4 + c1 X^3 + c2 X^2 + c3 X + sign p^4` has all roots of
/// absolute value `p`, via `w = X / p`.
fn roots_on_circle(c1: i128, c2: i128, c3: i128, sign: i8, p: i128) -> bool {
    let p2 = p * p;
    // In w the polynomial is w^4 + a w^3 + b w^2 + (c3/p^3) w + sign.
    let a = Rational::new(c1, p);
    let b = Rational::new(c2, p2);
    let c = Rational::new(c3, p2 * p);
    let two = Rational::from(2);
    if sign > 0 {
        // reciprocal: w^2 (y^2 + a y + b - 2) with y = w + 1/w; need real y in [-2, 2]
        if c != a {
            return false;
        }
        let disc = &(&a * &a) - &(&Rational::from(4) * &(&b - &two));
        if disc.is_negative() {
            return false;
        }
        // both roots of y^2 + a y + (b - 2) lie in [-2, 2]
        let g = |y: &Rational| &(&(y * y) + &(&a * y)) + &(&b - &two);
        let vertex = &(-&a) / &two;
        !g(&two).is_negative()
            && !g(&(-&two)).is_negative()
            && vertex >= -&two
            && vertex <= two
    } else {
        // anti-reciprocal: (w^2 - 1)(w^2 + a w + 1), need |a| <= 2
        b.is_zero() && c == -&a && a.abs() <= two
    }
}

/// Degree-at-most-4 cyclotomic polynomials, lowest degree first.
const CYCLOTOMIC: &[&[i64]] = &[
    &[-1, 1],
    &[1, 1],
    &[1, 1, 1],
    &[1, 0, 1],
    &[1, -1, 1],
    &[1, 1, 1, 1, 1],
    &[1, 0, 0, 0, 1],
    &[1, -1, 1, -1, 1],
    &[1, 0, -1, 0, 1],
];

/// Number of roots `alpha` of `h` with `alpha / p` a root of unity, with multiplicity.
pub fn unity_root_count(h: &Polynomial<Rational>, p: u64) -> usize {
    let Some(d) = h.degree() else { return 0 };
    // g(w) = h(p w) / p^d
    let p = Rational::from(p as i64);
    let mut g = Polynomial::new(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * &Field::pow(&p, i as u64))
            .collect(),
    )
    .scale(&Field::pow(&p, d as u64).inv().expect("p is nonzero"));
    let mut count = 0;
    for phi in CYCLOTOMIC {
        let phi = Polynomial::<Rational>::from_i64s(phi);
        while let Some(q) = g.div_exact(&phi) {
            count += phi.degree().expect("nonconstant");
            g = q;
        }
    }
    count
}

/// Upper bound for the Picard number: the eigenvalues `alpha` on `H^2` with
/// `alpha / p` a root of unity. The known block contributes 18; each root of
/// `h` that fails the test lowers the bound from 22.
pub fn picard_bound(h: &Polynomial<Rational>, p: u64) -> u32 {
    let d = h.degree().unwrap_or(0) as u32;
    BETTI[2] - d + unity_root_count(h, p) as u32
}

/// For even `h`, the primitive integer polynomial of `beta = (alpha / p)^2`,
/// lowest degree first.
pub fn beta_polynomial(cp: &CharPoly, p: u64) -> Option<[i128; 3]> {
    if !cp.is_even() {
        return None;
    }
    // Z^2 + c2 Z + c4 with Z = p^2 beta, divided by p^4
    let p2 = (p * p) as i128;
    let (c2, c4) = (cp.coeffs[1], cp.coeffs[3]);
    let raw = [c4, c2 * p2, p2 * p2];
    let g = raw.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
    Some(raw.map(|x| x / g))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Everything derived from the counts over `F_p, F_{p^2}, F_{p^3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardReport {
    pub p: u64,
    pub betti: [u32; 5],
    pub rows: Vec<TraceRow>,
    pub char_poly: CharPoly,
    pub h: String,
    pub beta_polynomial: Option<[i128; 3]>,
    pub unity_roots: usize,
    pub bound: u32,
}

pub fn picard_report(p: u64, counts: &[u64]) -> Result<PicardReport, CountError> {
    let rows = traces_report(p, counts)?;
    let residual: Vec<i128> = rows.iter().map(|r| r.residual).collect();
    let char_poly = newton_char_poly(&residual, 4, p)?;
    let h = char_poly.polynomial();
    let h_text = h.display_with("X").to_string();
    let report = PicardReport {
        p,
        betti: BETTI,
        beta_polynomial: beta_polynomial(&char_poly, p),
        unity_roots: unity_root_count(&h, p),
        bound: picard_bound(&h, p),
        h: h_text,
        rows,
        char_poly,
    };
    Ok(report)
}

/// Euler characteristic and j-degree bookkeeping for the rational surface and its double cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub chi_x: i64,
    pub mu: i64,
    pub nu_iv_x: i64,
    pub chi_y: i64,
    pub mu_prime: i64,
    pub nu_iv_y: i64,
}

/// `12 chi = deg j + 4 nu(IV)` on both surfaces, with `deg j` read off the
/// curve over `Q(s)` and off `j(t) = (24 t^2 - 1)^3 / (t^6 (27 t^2 - 1))`.
pub fn euler_degree_check() -> Result<EulerCheck, crate::error::Error> {
    use crate::elliptic::{fiber_configuration, Kodaira};
    use crate::heron::family_curve;
    use crate::ratfunc::RationalFunction;

    let deg = |f: &RationalFunction<Rational>| {
        f.numer().degree().unwrap_or(0).max(f.denom().degree().unwrap_or(0)) as i64
    };
    let jt = RationalFunction::new(
        Polynomial::<Rational>::from_i64s(&[-1, 0, 24]).pow(3),
        Polynomial::from_i64s(&[-1, 0, 27]).mul(&Polynomial::monomial(Rational::from(1), 6)),
    )
    .expect("nonzero denominator");
    let mu = deg(&jt);

    let curve = family_curve::<Rational>();
    let j = curve.invariants().j.ok_or(VerifyError::Failed("singular generic fiber".into()))?;
    let mu_prime = deg(&j);
    let fibers = fiber_configuration(&curve)?;
    let nu_iv_y: i64 = fibers
        .iter()
        .filter(|f| f.kodaira == Kodaira::IV)
        .map(|f| f.degree() as i64)
        .sum();
    // both IV fibers lie over t = oo, where the double cover is unramified
    let nu_iv_x = nu_iv_y / 2;
    let check = |what: &str, mu: i64, nu: i64| -> Result<i64, VerifyError> {
        let lhs = mu + 4 * nu;
        if lhs % 12 != 0 {
            return Err(VerifyError::Mismatch {
                check: format!("12 chi = deg j + 4 nu(IV) on {what}"),
                expected: "a multiple of 12".into(),
                actual: lhs.to_string(),
            });
        }
        Ok(lhs / 12)
    };
    let chi_x = check("X", mu, nu_iv_x)?;
    let chi_y = check("Y", mu_prime, nu_iv_y)?;
    if chi_y != 2 * chi_x || mu_prime != 2 * mu {
        return Err(VerifyError::Mismatch {
            check: "double cover scaling".into(),
            expected: format!("chi_Y = {}, mu' = {}", 2 * chi_x, 2 * mu),
            actual: format!("chi_Y = {chi_y}, mu' = {mu_prime}"),
        }
        .into());
    }
    Ok(EulerCheck {
        chi_x,
        mu,
        nu_iv_x,
        chi_y,
        mu_prime,
        nu_iv_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f11() -> Arc<FiniteField> {
        FiniteField::new(11, 1).unwrap()
    }

    #[test]
    fn fiber_counts_over_f11() {
        let f = f11();
        assert_eq!(count_fiber(&f, P1Point::Finite(1)), 66);
        assert_eq!(count_fiber(&f, P1Point::Infinity), 66);
        assert_eq!(count_fiber(&f, P1Point::Finite(0)), 34);
        assert_eq!(count_fiber(&f, P1Point::Finite(10)), 34);
        assert_eq!(count_fiber(&f, P1Point::Finite(2)), 15);
        assert_eq!(plane_parameter_idx(&f, 2), Some(2));
        assert_eq!(brute_force_cubic(&f, 2), 15);
    }

    #[test]
    fn character_sum_matches_enumeration() {
        let f = f11();
        for s in 2..10u32 {
            let t = plane_parameter_idx(&f, s).unwrap();
            assert_eq!(count_fiber(&f, P1Point::Finite(s)), brute_force_cubic(&f, t), "s = {s}");
        }
    }

    #[test]
    fn surface_count_small_fields() {
        let r = count_surface(11, 1).unwrap();
        assert_eq!(r.count, 298);
        assert_eq!(r.fibers.len(), 12);
        assert!(r.hasse_violations().is_empty());
        assert_eq!(count_surface(11, 2).unwrap().count, 16908);
        assert!(count_surface(3, 1).is_err());
    }

    #[test]
    fn traces_and_char_poly() {
        let rows = traces_report(11, &[298, 16908, 1792858]).unwrap();
        let got: Vec<(i128, i128, i128)> = rows.iter().map(|r| (r.trace, r.known, r.residual)).collect();
        assert_eq!(got, vec![(176, 176, 0), (2266, 2178, 88), (21296, 21296, 0)]);
        let cp = newton_char_poly(&[0, 88, 0], 4, 11).unwrap();
        assert_eq!(cp.coeffs, [0, -44, 0, 14641]);
        assert!(!cp.ambiguous);
        assert!(!roots_on_circle(0, -44, 0, -1, 11));
        assert_eq!(cp.polynomial().display_with("X").to_string(), "X^4 - 44*X^2 + 14641");
        assert_eq!(beta_polynomial(&cp, 11), Some([11, -4, 11]));
        assert_eq!(picard_bound(&cp.polynomial(), 11), 18);
    }

    #[test]
    fn zero_traces_are_ambiguous() {
        let cp = newton_char_poly(&[0, 0, 0], 4, 7).unwrap();
        assert!(cp.ambiguous);
        assert_eq!(cp.coeffs, [0, 0, 0, 2401]);
        assert_eq!(picard_bound(&cp.polynomial(), 7), 22);
    }

    #[test]
    fn bound_for_trivial_blocks() {
        let p = 11;
        let lin = Polynomial::<Rational>::from_i64s(&[-(p as i64), 1]);
        assert_eq!(picard_bound(&lin.pow(4), p), 22);
        assert_eq!(newton_char_poly(&[44, 484, 5324], 4, p).unwrap().coeffs, [-44, 726, -5324, 14641]);
        assert!(newton_char_poly(&[0, 88, 0], 3, p).is_err());
    }

    #[test]
    fn euler_identity() {
        let e = euler_degree_check().unwrap();
        assert_eq!((e.chi_x, e.mu, e.nu_iv_x), (1, 8, 1));
        assert_eq!((e.chi_y, e.mu_prime, e.nu_iv_y), (2, 16, 2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn base_change_partners_agree(s in 2u32..121) {
            let f = FiniteField::new(11, 2).unwrap();
            if let Some(s2) = base_change_partner(&f, s) {
                prop_assert_eq!(count_fiber(&f, P1Point::Finite(s)), count_fiber(&f, P1Point::Finite(s2)));
            }
        }
    }
}
