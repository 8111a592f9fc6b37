//! The acceptance suite, shared by the test harness and `selfcheck`.
//!
//! Each criterion is a list of named checks; a criterion passes when every
//! check passes. Randomized checks use fixed seeds so reports are reproducible.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{Field, Fp, Rational};
use crate::elliptic::{CurvePoint, Kodaira, WeierstrassCurve};
use crate::finite_field::{FiniteField, P1Point};
use crate::fixtures;
use crate::heron::{
    canonical_projective, family_curve, family_curve_at, from_weierstrass, generate_triple,
    inverse_param, param_surface, plane_parameter, specialize_triangle, to_weierstrass, Qs,
    Triangle,
};
use crate::heron::family::{cycle, section_p_at, section_r_at, swap};
use crate::mw::{bad_fibers, mw_report, ns_discriminant, torsion_certificate, two_divisibility};
use crate::picard::{
    brute_force_cubic, count_fiber, count_surface, euler_degree_check, fiber_kind, picard_report,
    plane_parameter_idx, CountReport, FiberKind,
};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;

pub const COUNT_BUDGET: Duration = Duration::from_secs(60);
pub const GENERATE_BUDGET: Duration = Duration::from_secs(300);

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Skip the count over `F_1331`; its reference value stands in downstream.
    pub fast: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub module: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    /// `Fail` if any check failed, `Skipped` if every check was skipped.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.0.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn equal<T: PartialEq + std::fmt::Display>(&mut self, name: impl Into<String>, got: T, want: T) {
        let ok = got == want;
        let detail = if ok {
            got.to_string()
        } else {
            format!("got {got}, expected {want}")
        };
        self.check(name, ok, detail);
    }

    fn error(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.check(name, false, err.to_string());
    }

    fn skip(&mut self, name: impl Into<String>, why: &str) {
        self.0.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: why.into(),
        });
    }
}

fn q(text: &str) -> Rational {
    text.parse().expect("literal rational")
}

fn rf(text: &str) -> Qs {
    Qs::parse(text).expect("literal rational function")
}

/// Run every criterion in order.
pub fn run(opts: Options) -> Vec<CriterionReport> {
    let (c1, counts) = point_counts(opts);
    vec![
        c1,
        trace_pipeline(&counts),
        triple_fixtures(),
        triangle_identities(),
        twenty_triangles(),
        curve_invariants(),
        mordell_weil(),
        properties(),
    ]
}

/// Counts over `F_11^n` for `n = 1, 2, 3`; in fast mode the third is the
/// reference value.
pub fn point_counts(opts: Options) -> (CriterionReport, Vec<u64>) {
    let mut c = Checks::default();
    let mut counts = Vec::new();
    for n in 1..=3u32 {
        let want = fixtures::COUNTS_F11[n as usize - 1];
        if n == 3 && opts.fast {
            c.skip("count(11, 3)", "fast mode");
            counts.push(want);
            continue;
        }
        let start = Instant::now();
        match count_surface(11, n) {
            Ok(report) => {
                let elapsed = start.elapsed();
                c.equal(format!("count(11, {n})"), report.count, want);
                if n == 3 {
                    c.check(
                        "count(11, 3) time",
                        elapsed < COUNT_BUDGET,
                        format!("{:.2}s", elapsed.as_secs_f64()),
                    );
                }
                counts.push(report.count);
            }
            Err(e) => {
                c.error(format!("count(11, {n})"), e);
                counts.push(want);
            }
        }
    }
    let report = CriterionReport {
        id: 1,
        title: "point counts over F_11, F_121, F_1331",
        module: "picard-count",
        checks: c.0,
    };
    (report, counts)
}

pub fn trace_pipeline(counts: &[u64]) -> CriterionReport {
    let mut c = Checks::default();
    match picard_report(11, counts) {
        Ok(r) => {
            let traces: Vec<i128> = r.rows.iter().map(|r| r.trace).collect();
            let residual: Vec<i128> = r.rows.iter().map(|r| r.residual).collect();
            c.check("traces", traces == fixtures::TRACES_F11, format!("{traces:?}"));
            c.check("residual traces", residual == [0, 88, 0], format!("{residual:?}"));
            c.equal("h", r.h.as_str(), "X^4 - 44*X^2 + 14641");
            c.equal("picard bound", r.bound, 18);
        }
        Err(e) => c.error("picard report", e),
    }
    CriterionReport {
        id: 2,
        title: "trace pipeline and Picard bound",
        module: "picard-count",
        checks: c.0,
    }
}

pub fn triple_fixtures() -> CriterionReport {
    let mut c = Checks::default();
    for n in 1..=4u32 {
        let start = Instant::now();
        let generated = match generate_triple(n) {
            Ok(t) => t,
            Err(e) => {
                c.error(format!("generate_triple({n})"), e);
                continue;
            }
        };
        let elapsed = start.elapsed();
        let expected = fixtures::triple_sides(n as usize);
        c.check(
            format!("sides n = {n}"),
            generated.sides == expected,
            "compared as reduced rational functions",
        );
        let xyz = fixtures::triple_coordinates(n as usize).map(Qs::from_poly);
        let proportional = (0..3).all(|i| {
            let j = (i + 1) % 3;
            generated.xyz[i].mul(&xyz[j]) == generated.xyz[j].mul(&xyz[i])
        });
        c.check(format!("cubic point n = {n}"), proportional, "projective comparison");
        if n == 4 {
            c.check(
                "generate_triple(4) time",
                elapsed < GENERATE_BUDGET,
                format!("{:.2}s", elapsed.as_secs_f64()),
            );
        }
    }
    CriterionReport {
        id: 3,
        title: "triangle families for n = 1..4",
        module: "heron-geometry",
        checks: c.0,
    }
}

pub fn triangle_identities() -> CriterionReport {
    let mut c = Checks::default();
    let mut count = 0;
    let mut failures = Vec::new();
    for s0 in ["2", "3", "7/3"].map(q) {
        let perimeter = Rational::from(2) * &s0 * (&s0 + &Rational::from(1));
        let area = &s0 * &(&s0 * &s0 - Rational::from(1));
        let inradius = &s0 - &Rational::from(1);
        let mut seen: Vec<Triangle> = Vec::new();
        for n in 1..=5 {
            count += 1;
            match specialize_triangle(n, &s0) {
                Ok(t) => {
                    if t.perimeter() != perimeter
                        || t.area().as_ref() != Some(&area)
                        || t.inradius().as_ref() != Some(&inradius)
                    {
                        failures.push(format!("n = {n}, s = {s0}: {t}"));
                    }
                    if seen.iter().any(|u| u.is_similar(&t)) {
                        failures.push(format!("n = {n}, s = {s0}: similar to an earlier triangle"));
                    }
                    seen.push(t);
                }
                Err(e) => failures.push(format!("n = {n}, s = {s0}: {e}")),
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{count} triangles")
    } else {
        failures.join("; ")
    };
    c.check("perimeter, area, inradius, nonsimilarity", failures.is_empty(), detail);
    match specialize_triangle(1, &q("2")) {
        Ok(t) => c.check("n = 1, s = 2", t.shape() == Triangle::from_i64s(3, 4, 5).unwrap().shape(), t.to_string()),
        Err(e) => c.error("n = 1, s = 2", e),
    }
    CriterionReport {
        id: 4,
        title: "triangle identities at s = 2, 3, 7/3",
        module: "heron-geometry",
        checks: c.0,
    }
}

/// Checks a table of triangles sharing perimeter and area; the bundled one when `None`.
pub fn twenty_triangles_from(text: Option<&str>) -> CriterionReport {
    let mut c = Checks::default();
    let rows = match crate::heron::parse_csv(text.unwrap_or(fixtures::TWENTY_TRIANGLES_CSV)) {
        Ok(rows) => rows,
        Err(e) => {
            c.error("parse", e);
            return twenty_triangles_report(c);
        }
    };
    c.equal("rows", rows.len(), 20);
    let p = q(fixtures::TWENTY_PERIMETER);
    let a = q(fixtures::TWENTY_AREA);
    let bad: Vec<String> = rows
        .iter()
        .enumerate()
        .filter(|(_, t)| t.perimeter() != p || t.area().as_ref() != Some(&a) || !t.is_integral())
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    let detail = if bad.is_empty() {
        format!("perimeter {p}, area {a}")
    } else {
        format!("rows {}", bad.join(", "))
    };
    c.check("common perimeter and area", bad.is_empty(), detail);
    twenty_triangles_report(c)
}

fn twenty_triangles_report(c: Checks) -> CriterionReport {
    CriterionReport {
        id: 5,
        title: "twenty Heron triangles with common perimeter and area",
        module: "heron-geometry",
        checks: c.0,
    }
}

pub fn twenty_triangles() -> CriterionReport {
    twenty_triangles_from(None)
}

pub fn curve_invariants() -> CriterionReport {
    let mut c = Checks::default();
    let curve = family_curve::<Rational>();
    let inv = curve.invariants();
    let displayed = displayed_discriminant();
    c.check("discriminant", inv.discriminant == displayed, inv.discriminant.to_string());

    let jt = rf("24*s^2 - 1")
        .powi(3)
        .expect("nonzero")
        .div(&rf("s^6").mul(&rf("27*s^2 - 1")))
        .expect("nonzero");
    let t = plane_parameter(&Qs::s()).expect("nonzero");
    match &inv.j {
        Some(j) => c.check("j invariant", *j == jt.compose(&t), j.to_string()),
        None => c.check("j invariant", false, "undefined"),
    }

    let fibers = bad_fibers();
    let total: i64 = fibers.iter().map(|f| f.v_delta * f.degree() as i64).sum();
    c.equal("sum v(disc) deg", total, 24);
    let mut multiset: Vec<(Kodaira, usize)> = Vec::new();
    for f in fibers {
        match multiset.iter_mut().find(|(k, _)| *k == f.kodaira) {
            Some(entry) => entry.1 += f.degree(),
            None => multiset.push((f.kodaira, f.degree())),
        }
    }
    multiset.sort();
    let text = multiset.iter().map(|(k, n)| format!("{k} x{n}")).collect::<Vec<_>>().join(", ");
    c.check(
        "fiber multiset",
        multiset == [(Kodaira::I(1), 4), (Kodaira::I(6), 2), (Kodaira::IV, 2)],
        text,
    );
    match euler_degree_check() {
        Ok(e) => c.check(
            "Euler identity",
            e.mu == 8 && e.mu_prime == 16,
            format!("mu = {}, mu' = {}", e.mu, e.mu_prime),
        ),
        Err(e) => c.error("Euler identity", e),
    }
    CriterionReport {
        id: 6,
        title: "discriminant, j-invariant and singular fibers",
        module: "elliptic-core",
        checks: c.0,
    }
}

pub fn mordell_weil() -> CriterionReport {
    let mut c = Checks::default();
    match torsion_certificate() {
        Ok(t) => {
            c.check("order of P", t.p_order == Some(3), format!("{:?}", t.p_order));
            for m in &t.multiples {
                c.check(format!("{}R nonzero", m.m), m.nonzero, "");
                let roots: Vec<String> = m.rational_roots.iter().map(|r| r.to_string()).collect();
                c.check(
                    format!("den(xi_{}) has no rational roots", m.m),
                    m.rational_roots.is_empty(),
                    format!("degree {}, roots [{}]", m.denominator_degree, roots.join(", ")),
                );
                c.equal(format!("den(xi_{}) roots above 1", m.m), m.roots_above_one, 0);
            }
        }
        Err(e) => c.error("torsion certificate", e),
    }
    match mw_report() {
        Ok(r) => {
            let identity = r.gram.matrix
                == vec![
                    vec![Rational::from(1), Rational::from(0)],
                    vec![Rational::from(0), Rational::from(1)],
                ];
            let cells: Vec<String> = r.gram.matrix.iter().flatten().map(|x| x.to_string()).collect();
            c.check("Gram(Q, R)", identity, format!("[{}]", cells.join(", ")));
            c.check(
                "rank bookkeeping",
                r.rank == 2 && r.trivial_excess == 14 && r.rho == 18,
                format!("{} + 2 + {} = {}", r.rank, r.trivial_excess, r.rho),
            );
            c.equal("disc NS", ns_discriminant(&r), Rational::from(-36));
        }
        Err(e) => c.error("Mordell-Weil report", e),
    }
    match two_divisibility() {
        Ok(d) => c.check(
            "Q + R not divisible by 2",
            d.no_solution && d.cases.len() == 4,
            format!("{} cases", d.cases.len()),
        ),
        Err(e) => c.error("two-divisibility", e),
    }
    CriterionReport {
        id: 7,
        title: "Mordell-Weil group",
        module: "mw-verify",
        checks: c.0,
    }
}

pub fn properties() -> CriterionReport {
    let mut c = Checks::default();
    group_law(&mut c);
    hasse(&mut c);
    roundtrip(&mut c);
    character_sums(&mut c);
    g_action(&mut c);
    CriterionReport {
        id: 8,
        title: "property suites",
        module: "all",
        checks: c.0,
    }
}

type F101 = Fp<101>;

fn random_point(rng: &mut StdRng, e: &WeierstrassCurve<F101>) -> CurvePoint<F101> {
    loop {
        let x = F101::new(rng.gen_range(0..101));
        let rhs = e.rhs(&x);
        if let Some(y) = F101::elements().find(|y| y.square() == rhs) {
            let y = if rng.gen() { y } else { y.neg() };
            return CurvePoint::new(x, y);
        }
    }
}

fn group_law(c: &mut Checks) {
    let mut rng = StdRng::seed_from_u64(101);
    let mut failures = 0;
    for _ in 0..500 {
        let e = loop {
            let [a2, a4, a6] = [(); 3].map(|_| F101::new(rng.gen_range(0..101)));
            let e = WeierstrassCurve::new(a2, a4, a6);
            if !e.is_singular() {
                break e;
            }
        };
        let [p, q, r] = [(); 3].map(|_| random_point(&mut rng, &e));
        let o = CurvePoint::Infinity;
        let ok = e.add_unchecked(&e.add_unchecked(&p, &q), &r) == e.add_unchecked(&p, &e.add_unchecked(&q, &r))
            && e.add_unchecked(&p, &q) == e.add_unchecked(&q, &p)
            && e.add_unchecked(&p, &o) == p
            && e.add_unchecked(&p, &p.neg()) == o
            && e.contains(&e.add_unchecked(&p, &q));
        failures += !ok as usize;
    }
    c.check("group law over F_101", failures == 0, format!("500 triples, {failures} failures"));
}

fn hasse(c: &mut Checks) {
    let mut failures = Vec::new();
    for n in 1..=3 {
        match count_surface(11, n) {
            Ok(r) => failures.extend(hasse_failures(&r)),
            Err(e) => failures.push(e.to_string()),
        }
    }
    let detail = if failures.is_empty() {
        "F_11, F_121, F_1331".to_string()
    } else {
        failures.join("; ")
    };
    c.check("Hasse bound on smooth fibers", failures.is_empty(), detail);
}

fn hasse_failures(r: &CountReport) -> Vec<String> {
    r.hasse_violations()
        .into_iter()
        .map(|f| format!("q = {}, s = {}: {}", r.q, f.s, f.count))
        .collect()
}

fn roundtrip(c: &mut Checks) {
    let mut rng = StdRng::seed_from_u64(2);
    let mut done = 0;
    let mut failures = 0;
    while done < 1000 {
        let u = Rational::new(rng.gen_range(-60..60), rng.gen_range(1..12));
        let v = Rational::new(rng.gen_range(-60..60), rng.gen_range(1..12));
        let w = Rational::from(rng.gen_range(-60..60));
        if v.is_zero() || w.is_zero() || u == v {
            continue;
        }
        done += 1;
        let ok = param_surface(&u, &v, &w)
            .ok()
            .filter(|pt| pt.on_surface())
            .and_then(|pt| inverse_param(&pt).ok())
            .is_some_and(|back| canonical_projective(&back) == canonical_projective(&[u, v, w]));
        failures += !ok as usize;
    }
    c.check("surface parametrization roundtrip", failures == 0, format!("1000 points, {failures} failures"));
}

fn character_sums(c: &mut Checks) {
    let field = FiniteField::new(11, 1).expect("F_11");
    let mut compared = 0;
    let mut failures = Vec::new();
    for s in 0..11u32 {
        let kind = fiber_kind(&field, P1Point::Finite(s));
        if !matches!(kind, FiberKind::Smooth | FiberKind::I1) {
            continue;
        }
        let Some(t) = plane_parameter_idx(&field, s) else { continue };
        compared += 1;
        let (a, b) = (count_fiber(&field, P1Point::Finite(s)), brute_force_cubic(&field, t));
        if a != b {
            failures.push(format!("s = {s}: {a} vs {b}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("{compared} fibers")
    } else {
        failures.join("; ")
    };
    c.check("character sum vs enumeration over F_11", failures.is_empty(), detail);
}

fn g_action(c: &mut Checks) {
    let mut rng = StdRng::seed_from_u64(50);
    let mut done = 0;
    let mut failures = Vec::new();
    while done < 50 {
        let s0 = Rational::new(rng.gen_range(2..60), rng.gen_range(1..8)) + Rational::from(1);
        let e = family_curve_at(&s0);
        if e.is_singular() {
            continue;
        }
        done += 1;
        let (k, l) = (rng.gen_range(-3..=3i64), rng.gen_range(0..3i64));
        let p = section_p_at(&s0);
        let pt = e.add_unchecked(&e.scalar_mul_unchecked(k, &section_r_at(&s0)), &e.scalar_mul_unchecked(l, &p));
        if pt.is_infinity() {
            continue;
        }
        let xyz = from_weierstrass(&s0, &pt);
        let translated = to_weierstrass(&s0, &cycle(&xyz)).ok();
        let negated = to_weierstrass(&s0, &swap(&xyz)).ok();
        if translated != Some(e.add_unchecked(&pt, &p)) {
            failures.push(format!("cycle at s = {s0}, {k}R + {l}P"));
        }
        if negated != Some(pt.neg()) {
            failures.push(format!("swap at s = {s0}, {k}R + {l}P"));
        }
    }
    let detail = if failures.is_empty() {
        "50 specializations".to_string()
    } else {
        failures.join("; ")
    };
    c.check("cycle is translation by P, swap is negation", failures.is_empty(), detail);
}

/// `2^12 (s-1)^6 s^4 (s+1)^4 (s^4 + 2 s^3 - 26 s^2 + 54 s - 27)`.
fn displayed_discriminant() -> RationalFunction<Rational> {
    RationalFunction::from_poly(
        Polynomial::from_i64s(&[-1, 1])
            .pow(6)
            .mul(&Polynomial::from_i64s(&[0, 1]).pow(4))
            .mul(&Polynomial::from_i64s(&[1, 1]).pow(4))
            .mul(&Polynomial::from_i64s(&[-27, 54, -26, 2, 1]))
            .scale(&Rational::from(4096)),
    )
}
