//! Mordell-Weil group of the family over `Q(i)(s)`: torsion, heights,
//! 2-divisibility, and the Neron-Severi discriminant.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::{Field, GaussianRational, Rational};
use crate::elliptic::{
    fiber_configuration, minimalize_at_place, CurvePoint, FiberClass, Kodaira, WeierstrassCurve,
};
use crate::error::{CurveError, Error, VerifyError};
use crate::function_field::{newton_polygon, Place, Valuation};
use crate::heron::family::{family_curve, family_sections, to_gaussian, Gs, Qs};
use crate::picard::{BETTI, KNOWN_RANK};
use crate::poly::factor::rational_roots;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;

type Rf<F> = RationalFunction<F>;

/// Euler characteristic of the structure sheaf of the K3 surface.
pub const CHI: i64 = 2;

/// Whether a section is defined over `Q(s)` or needs `Q(i)(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldTag {
    Rational,
    Gaussian,
}

/// A named section, stored over `Q(i)(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub name: String,
    pub point: CurvePoint<Gs>,
    pub field: FieldTag,
}

impl Section {
    pub fn rational(name: &str, pt: &CurvePoint<Qs>) -> Self {
        Section {
            name: name.to_string(),
            point: pt.map(to_gaussian),
            field: FieldTag::Rational,
        }
    }

    pub fn gaussian(name: &str, pt: CurvePoint<Gs>) -> Self {
        let field = if is_real(&pt) { FieldTag::Rational } else { FieldTag::Gaussian };
        Section {
            name: name.to_string(),
            point: pt,
            field,
        }
    }

    /// `O`, `P`, `Q` or `R`.
    pub fn named(name: &str) -> Option<Self> {
        let sec = family_sections();
        Some(match name {
            "O" => Section::rational("O", &sec.o),
            "P" => Section::rational("P", &sec.p),
            "R" => Section::rational("R", &sec.r),
            "Q" => Section::gaussian("Q", sec.q),
            _ => return None,
        })
    }

    /// Integer combination such as `Q+R`, `2Q-R` or `-P+3R`.
    pub fn parse_combination(text: &str) -> Result<Self, VerifyError> {
        let bad = || VerifyError::Failed(format!("malformed section combination `{text}`"));
        let curve = gaussian_curve();
        let mut acc = CurvePoint::Infinity;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let digits = body.bytes().take_while(u8::is_ascii_digit).count();
            let k: i64 = if digits == 0 { 1 } else { body[..digits].parse().map_err(|_| bad())? };
            let name = body.get(digits..digits + 1).ok_or_else(bad)?;
            let base = Section::named(name).ok_or_else(bad)?;
            acc = curve.add_unchecked(&acc, &curve.scalar_mul_unchecked(sign * k, &base.point));
            rest = &body[digits + 1..];
        }
        Ok(Section::gaussian(&compact, acc))
    }

    pub fn conjugate(&self) -> CurvePoint<Gs> {
        self.point.map(|f| f.map(GaussianRational::conj))
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.point {
            CurvePoint::Infinity => write!(f, "{} = O", self.name),
            CurvePoint::Affine { x, y } => write!(f, "{} = ({x}, {y})", self.name),
        }
    }
}

fn is_real(pt: &CurvePoint<Gs>) -> bool {
    let real = |f: &Gs| {
        f.numer().coeffs().iter().all(GaussianRational::is_real)
            && f.denom().coeffs().iter().all(GaussianRational::is_real)
    };
    match pt {
        CurvePoint::Infinity => true,
        CurvePoint::Affine { x, y } => real(x) && real(y),
    }
}

pub fn gaussian_curve() -> WeierstrassCurve<Gs> {
    family_curve::<GaussianRational>()
}

/// Singular fibers of the family, computed once.
pub fn bad_fibers() -> &'static [FiberClass<Rational>] {
    static FIBERS: OnceLock<Vec<FiberClass<Rational>>> = OnceLock::new();
    FIBERS.get_or_init(|| fiber_configuration(&family_curve()).expect("family fibers classify"))
}

/// Transport a place of degree one (or infinity) to an extension field.
fn embed_place<F: Field + From<Rational>>(place: &Place<Rational>) -> Option<Place<F>> {
    match place {
        Place::Infinity => Some(Place::Infinity),
        Place::Finite(p) if p.degree() == Some(1) => Some(Place::at(&F::from(p.coeff(0).neg()))),
        Place::Finite(_) => None,
    }
}

/// `(S . O)`: half the pole order of `x` summed over places, on minimal models.
///
/// The model is minimal at every finite place, so the finite part is half
/// the degree of the denominator of `x`.
pub fn zero_intersection<F: Field + From<Rational>>(
    curve: &WeierstrassCurve<Rf<F>>,
    pt: &CurvePoint<Rf<F>>,
) -> Result<Rational, CurveError> {
    let CurvePoint::Affine { x, y } = pt else {
        return Err(CurveError::NotOnCurve);
    };
    let d = x.denom().degree().unwrap_or(0) as i64;
    if d % 2 != 0 {
        return Err(CurveError::OddPoleOrder {
            place: "a finite place".into(),
            order: d,
        });
    }
    let model = minimalize_at_place(curve, &Place::Infinity);
    let (xi, _) = model.transform(&Place::Infinity, x, y);
    let at_inf = match Place::Infinity.valuation(&xi) {
        Valuation::Finite(v) if v < 0 => -v,
        _ => 0,
    };
    if at_inf % 2 != 0 {
        return Err(CurveError::OddPoleOrder {
            place: "oo".into(),
            order: at_inf,
        });
    }
    Ok(Rational::new(d + at_inf, 2))
}

/// Where a section meets one singular fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalComponent {
    pub place: String,
    pub kodaira: Kodaira,
    /// 0 for the identity component; for `I_n` the index up to `i <-> n - i`.
    pub component: u32,
    /// `contr_v(S, S)`.
    pub contribution: Rational,
}

/// Component met by `pt` at a degree-one place and its self-contribution.
pub fn local_component<F: Field + From<Rational>>(
    curve: &WeierstrassCurve<Rf<F>>,
    fiber: &FiberClass<Rational>,
    place: &Place<F>,
    pt: &CurvePoint<Rf<F>>,
) -> Result<LocalComponent, CurveError> {
    let kodaira = fiber.kodaira;
    let ident = |contribution: Rational, component: u32| LocalComponent {
        place: fiber.place.to_string(),
        kodaira,
        component,
        contribution,
    };
    let CurvePoint::Affine { x, y } = pt else {
        return Ok(ident(Rational::from(0), 0));
    };
    let model = minimalize_at_place(curve, place);
    let (x1, y1) = model.transform(place, x, y);
    if matches!(place.valuation(&x1), Valuation::Finite(v) if v < 0) {
        return Ok(ident(Rational::from(0), 0));
    }
    let red = |f: &Rf<F>| place.reduce(f).ok_or(CurveError::NonIntegral(place.to_string()));
    let (x0, y0) = (red(&x1)?, red(&y1)?);
    let m = &model.curve;
    let (a2, a4, a6) = (red(&m.a2)?, red(&m.a4)?, red(&m.a6)?);
    let f = x0.mul(&x0).mul(&x0).add(&a2.mul(&x0).mul(&x0)).add(&a4.mul(&x0)).add(&a6);
    let df = F::from_i64(3).mul(&x0).mul(&x0).add(&F::from_i64(2).mul(&a2).mul(&x0)).add(&a4);
    let singular = y0.is_zero() && f.is_zero() && df.is_zero();
    if !singular {
        return Ok(ident(Rational::from(0), 0));
    }
    let component = match kodaira {
        Kodaira::I(n) => {
            let v = place.valuation(&y1.mul(&Rf::from_i64(2)));
            let half = i64::from(n / 2);
            v.finite().map_or(half, |v| v.min(half)) as u32
        }
        Kodaira::III | Kodaira::IV => 1,
        Kodaira::II => 0,
    };
    Ok(ident(kodaira.contribution(component, component), component))
}

/// Components met at every singular fiber with a nonzero correction term.
pub fn components<F: Field + From<Rational>>(
    curve: &WeierstrassCurve<Rf<F>>,
    pt: &CurvePoint<Rf<F>>,
) -> Result<Vec<LocalComponent>, CurveError> {
    let mut out = Vec::new();
    for fiber in bad_fibers() {
        let Some(place) = embed_place::<F>(&fiber.place) else {
            if fiber.kodaira == Kodaira::I(1) {
                continue;
            }
            return Err(CurveError::UnsupportedFiber {
                place: fiber.place.to_string(),
                v_c4: fiber.v_c4,
                v_disc: fiber.v_delta,
            });
        };
        out.push(local_component(curve, fiber, &place, pt)?);
    }
    Ok(out)
}

/// `<S, S> = 2 chi + 2 (S . O) - sum_v contr_v(S, S)`.
pub fn height<F: Field + From<Rational>>(
    curve: &WeierstrassCurve<Rf<F>>,
    pt: &CurvePoint<Rf<F>>,
) -> Result<Rational, CurveError> {
    if pt.is_infinity() {
        return Ok(Rational::from(0));
    }
    let so = zero_intersection(curve, pt)?;
    let corr = components(curve, pt)?
        .iter()
        .fold(Rational::from(0), |acc, c| &acc + &c.contribution);
    Ok(&(&Rational::from(2 * CHI) + &(&Rational::from(2) * &so)) - &corr)
}

/// Terms of the pairing formula for two sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingTerms {
    pub s_dot_o: Rational,
    pub t_dot_o: Rational,
    pub s_dot_t: Rational,
    pub correction: Rational,
    pub value: Rational,
}

/// `<S, T> = chi + (S.O) + (T.O) - (S.T) - sum_v contr_v(S, T)`.
///
/// `(S.T)` is computed as `((S - T) . O)` and `contr_v(S, T)` as
/// `(contr_v(S,S) + contr_v(T,T) - contr_v(S-T,S-T)) / 2`, which fixes the
/// relative orientation of the component indices.
pub fn pairing_terms<F: Field + From<Rational>>(
    curve: &WeierstrassCurve<Rf<F>>,
    s: &CurvePoint<Rf<F>>,
    t: &CurvePoint<Rf<F>>,
) -> Result<PairingTerms, CurveError> {
    let zero = Rational::from(0);
    let dot_o = |p: &CurvePoint<Rf<F>>| {
        if p.is_infinity() {
            Ok(zero.clone())
        } else {
            zero_intersection(curve, p)
        }
    };
    let local = |p: &CurvePoint<Rf<F>>| -> Result<Vec<Rational>, CurveError> {
        let n = bad_fibers().len();
        if p.is_infinity() {
            return Ok(vec![zero.clone(); n]);
        }
        Ok(components(curve, p)?.into_iter().map(|c| c.contribution).collect())
    };
    if s.is_infinity() || t.is_infinity() {
        return Ok(PairingTerms {
            s_dot_o: dot_o(s)?,
            t_dot_o: dot_o(t)?,
            s_dot_t: zero.clone(),
            correction: zero.clone(),
            value: zero,
        });
    }
    let diff = curve.add_unchecked(s, &t.neg());
    let (s_o, t_o) = (dot_o(s)?, dot_o(t)?);
    let (cs, ct, cd) = (local(s)?, local(t)?, local(&diff)?);
    let correction = cs
        .iter()
        .zip(&ct)
        .zip(&cd)
        .fold(zero.clone(), |acc, ((a, b), d)| &acc + &(&(&(a + b) - d) / &Rational::from(2)));
    if diff.is_infinity() {
        // S = T: the self-intersection is -chi and the formula reduces to the height
        let value = &(&(&Rational::from(2 * CHI) + &s_o) + &t_o) - &correction;
        return Ok(PairingTerms {
            s_dot_o: s_o,
            t_dot_o: t_o,
            s_dot_t: Rational::from(-CHI),
            correction,
            value,
        });
    }
    let s_t = dot_o(&diff)?;
    let value = &(&(&(&Rational::from(CHI) + &s_o) + &t_o) - &s_t) - &correction;
    Ok(PairingTerms {
        s_dot_o: s_o,
        t_dot_o: t_o,
        s_dot_t: s_t,
        correction,
        value,
    })
}

pub fn height_pairing(s: &Section, t: &Section) -> Result<Rational, CurveError> {
    Ok(pairing_terms(&gaussian_curve(), &s.point, &t.point)?.value)
}

/// Gram matrix of the height pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightGram {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
    pub determinant: Rational,
}

pub fn height_gram(basis: &[Section]) -> Result<HeightGram, CurveError> {
    let n = basis.len();
    let mut matrix = vec![vec![Rational::from(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = height_pairing(&basis[i], &basis[j])?;
            matrix[i][j] = v.clone();
            matrix[j][i] = v;
        }
    }
    Ok(HeightGram {
        basis: basis.iter().map(|s| s.name.clone()).collect(),
        determinant: determinant(&matrix),
        matrix,
    })
}

/// Determinant by fraction-free elimination over `Q`.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::from(0);
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det = &det * &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] = &a[r][k] - &sub;
            }
        }
    }
    det
}

/// `den(x(mR))` and its rational roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipleReport {
    pub m: u32,
    pub nonzero: bool,
    pub denominator_degree: usize,
    pub rational_roots: Vec<Rational>,
    pub roots_above_one: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub p_order: Option<u64>,
    #[serde(serialize_with = "crate::mw::display")]
    pub x_2r_plus_p: Qs,
    /// Valuation of `x(2R + P)` at `s = 1`; negative means the kernel of reduction.
    pub v_at_one: i64,
    pub multiples: Vec<MultipleReport>,
}

pub(crate) fn display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub const TORSION_CANDIDATES: [u32; 3] = [8, 10, 12];

pub fn torsion_certificate() -> Result<TorsionCertificate, Error> {
    let curve = family_curve::<Rational>();
    let sec = family_sections();
    let p_order = curve.order(&sec.p, 12);
    let two_r = curve.double(&sec.r);
    let t = curve.add(&two_r, &sec.p)?;
    let x = t.x().ok_or(CurveError::NotOnCurve)?.clone();
    let v_at_one = Place::at(&Rational::from(1))
        .valuation(&x)
        .finite()
        .ok_or(CurveError::NotOnCurve)?;
    let mut multiples = Vec::new();
    let mut acc = CurvePoint::Infinity;
    let mut m = 0;
    for &target in &TORSION_CANDIDATES {
        while m < target {
            acc = curve.add_unchecked(&acc, &sec.r);
            m += 1;
        }
        let (nonzero, den) = match &acc {
            CurvePoint::Infinity => (false, Polynomial::one()),
            CurvePoint::Affine { x, .. } => (true, x.denom().clone()),
        };
        let roots = rational_roots(&den)?;
        let one = Rational::from(1);
        multiples.push(MultipleReport {
            m: target,
            nonzero,
            denominator_degree: den.degree().unwrap_or(0),
            roots_above_one: roots.iter().filter(|r| **r > one).count(),
            rational_roots: roots,
        });
    }
    Ok(TorsionCertificate {
        p_order,
        x_2r_plus_p: x,
        v_at_one,
        multiples,
    })
}

/// Summary of the Mordell-Weil group and the rank bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MwReport {
    pub structure: String,
    pub rank: usize,
    pub torsion_order: u64,
    pub fibers: Vec<FiberSummary>,
    pub trivial_excess: u32,
    pub rho: u32,
    pub gram: HeightGram,
    pub simple_component_product: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub place: String,
    pub kodaira: Kodaira,
    pub count: usize,
}

/// `rho = r + 2 + sum_v (m_v - 1)` with `r` the rank of the Gram matrix of `Q, R`.
pub fn mw_report() -> Result<MwReport, Error> {
    let torsion = torsion_certificate()?;
    let torsion_order = torsion.p_order.ok_or(VerifyError::Failed("P is not torsion".into()))?;
    let basis = [Section::named("Q").expect("Q"), Section::named("R").expect("R")];
    let gram = height_gram(&basis)?;
    let rank = if gram.determinant.is_zero() {
        return Err(VerifyError::Failed("Q and R are dependent".into()).into());
    } else {
        basis.len()
    };
    let fibers: Vec<FiberSummary> = bad_fibers()
        .iter()
        .map(|f| FiberSummary {
            place: f.place.to_string(),
            kodaira: f.kodaira,
            count: f.degree(),
        })
        .collect();
    let trivial_excess: u32 = bad_fibers()
        .iter()
        .map(|f| (f.components() - 1) * f.degree() as u32)
        .sum();
    let simple_component_product: u32 = bad_fibers()
        .iter()
        .map(|f| f.simple_components().pow(f.degree() as u32))
        .product();
    let rho = rank as u32 + 2 + trivial_excess;
    if rho != KNOWN_RANK || rho > BETTI[2] {
        return Err(VerifyError::Mismatch {
            check: "rho = r + 2 + sum(m_v - 1)".into(),
            expected: KNOWN_RANK.to_string(),
            actual: rho.to_string(),
        }
        .into());
    }
    Ok(MwReport {
        structure: format!("Z^{rank} x Z/{torsion_order}Z"),
        rank,
        torsion_order,
        fibers,
        trivial_excess,
        rho,
        gram,
        simple_component_product,
    })
}

/// `disc NS = (-1)^(rho - 1) disc MW * prod m_v / |tors|^2`.
pub fn ns_discriminant(report: &MwReport) -> Rational {
    let t = report.torsion_order as i64;
    let abs = &(&report.gram.determinant * &Rational::from(report.simple_component_product as i64))
        / &Rational::from(t * t);
    if report.rho % 2 == 0 {
        -abs
    } else {
        abs
    }
}

/// One `(k, l, m, n)` candidate `u = c s^k (s+1)^l (s-1)^m (s+i)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionCase {
    pub exponents: [u32; 4],
    /// Number of coefficient conditions on `c`.
    pub conditions: usize,
    /// gcd over `Q(i)` of the conditions; constant means no `c` exists.
    #[serde(serialize_with = "crate::mw::display")]
    pub gcd: Polynomial<GaussianRational>,
    pub solvable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisionCertificate {
    /// Coefficients of the quartic in `u`, lowest degree first.
    #[serde(serialize_with = "display_list")]
    pub quartic: Vec<Gs>,
    /// Integer root valuations at `s`, `s + 1`, `s - 1`, `s + i`.
    pub exponent_options: [Vec<u32>; 4],
    pub cases: Vec<DivisionCase>,
    pub no_solution: bool,
}

fn display_list<S: serde::Serializer>(v: &[Gs], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|f| f.to_string()))
}

fn gs(text: &str) -> Gs {
    to_gaussian(&Qs::parse(text).expect("valid literal"))
}

fn gi() -> Gs {
    Gs::constant(GaussianRational::i())
}

/// `x(2S) = x(Q + R)` in `u`, where `x(S) = 4 (s-1)^2 + 2 (s-1) u`, made monic.
pub fn halving_quartic() -> Result<Polynomial<Gs>, Error> {
    let curve = gaussian_curve();
    let q = Section::named("Q").expect("Q").point;
    let r = Section::named("R").expect("R").point;
    let sum = curve.add(&q, &r)?;
    let xs = sum.x().ok_or(CurveError::NotOnCurve)?;
    let inv = curve.invariants();
    let c = |n: i64| Polynomial::constant(Gs::from_i64(n));
    let xu = Polynomial::new(vec![gs("4*s^2 - 8*s + 4"), gs("2*s - 2")]);
    let x2 = xu.mul(&xu);
    let x3 = x2.mul(&xu);
    let k = |f: &Gs| Polynomial::constant(f.clone());
    // x(2S) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4 x^3 + b2 x^2 + 2 b4 x + b6)
    let num = x2
        .mul(&x2)
        .sub(&x2.mul(&k(&inv.b4)))
        .sub(&xu.mul(&k(&inv.b6)).mul(&c(2)))
        .sub(&k(&inv.b8));
    let den = x3
        .mul(&c(4))
        .add(&x2.mul(&k(&inv.b2)))
        .add(&xu.mul(&k(&inv.b4)).mul(&c(2)))
        .add(&k(&inv.b6));
    let eq = num.sub(&den.mul(&k(xs)));
    Ok(eq.monic())
}

/// Integer valuations of roots of `quartic` at `place`.
fn integer_root_valuations(quartic: &Polynomial<Gs>, place: &Place<GaussianRational>) -> Result<Vec<u32>, Error> {
    let np = newton_polygon(quartic, place)?;
    let mut out: Vec<u32> = np
        .root_valuations()
        .into_iter()
        .filter(|(v, _)| v.is_integer() && !v.is_negative())
        .map(|(v, _)| v.numer().try_into().expect("small valuation"))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Certificate that `Q + R` is not twice a section.
pub fn two_divisibility() -> Result<DivisionCertificate, Error> {
    let quartic = halving_quartic()?;
    let g = |r: i64, im: i64| GaussianRational::new(Rational::from(r), Rational::from(im));
    let places = [
        Place::at(&g(0, 0)),
        Place::at(&g(-1, 0)),
        Place::at(&g(1, 0)),
        Place::at(&g(0, -1)),
    ];
    let factors = [gs("s"), gs("s + 1"), gs("s - 1"), Gs::s().add(&gi())];
    let mut options: [Vec<u32>; 4] = Default::default();
    for (opt, place) in options.iter_mut().zip(&places) {
        *opt = integer_root_valuations(&quartic, place)?;
    }
    let mut cases = Vec::new();
    for &k in &options[0] {
        for &l in &options[1] {
            for &m in &options[2] {
                for &n in &options[3] {
                    let e = [k, l, m, n];
                    let mono = factors
                        .iter()
                        .zip(e)
                        .fold(Gs::one(), |acc, (f, e)| acc.mul(&f.pow(u64::from(e))));
                    cases.push(division_case(&quartic, &mono, e)?);
                }
            }
        }
    }
    let no_solution = !cases.is_empty() && cases.iter().all(|c| !c.solvable);
    Ok(DivisionCertificate {
        quartic: quartic.coeffs().to_vec(),
        exponent_options: options,
        cases,
        no_solution,
    })
}

/// Substitute `u = c * mono` and require every coefficient in `s` to vanish.
fn division_case(quartic: &Polynomial<Gs>, mono: &Gs, exponents: [u32; 4]) -> Result<DivisionCase, Error> {
    let mut terms: Vec<Polynomial<GaussianRational>> = Vec::new();
    for (j, a) in quartic.coeffs().iter().enumerate() {
        let t = a.mul(&mono.pow(j as u64));
        if !t.is_polynomial() {
            return Err(VerifyError::Failed("quartic coefficients must be polynomial".into()).into());
        }
        terms.push(t.numer().clone());
    }
    let top = terms.iter().filter_map(|t| t.degree()).max().unwrap_or(0);
    let conditions: Vec<Polynomial<GaussianRational>> = (0..=top)
        .map(|d| Polynomial::new(terms.iter().map(|t| t.coeff(d)).collect()))
        .filter(|p| !p.is_zero())
        .collect();
    let gcd = conditions
        .iter()
        .fold(Polynomial::zero(), |acc, p| acc.gcd(p));
    Ok(DivisionCase {
        exponents,
        conditions: conditions.len(),
        solvable: !gcd.is_constant(),
        gcd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named(n: &str) -> Section {
        Section::named(n).unwrap()
    }

    #[test]
    fn self_heights() {
        let e = gaussian_curve();
        assert_eq!(height(&e, &named("R").point).unwrap(), Rational::from(1));
        assert_eq!(height(&e, &named("Q").point).unwrap(), Rational::from(1));
        assert_eq!(height(&e, &named("P").point).unwrap(), Rational::from(0));
        let rat = family_curve::<Rational>();
        assert_eq!(height(&rat, &family_sections().r).unwrap(), Rational::from(1));
    }

    #[test]
    fn r_components() {
        let e = family_curve::<Rational>();
        let comps = components(&e, &family_sections().r).unwrap();
        let got: Vec<(String, u32, Rational)> = comps
            .into_iter()
            .filter(|c| c.component != 0)
            .map(|c| (c.place, c.component, c.contribution))
            .collect();
        assert_eq!(
            got,
            vec![
                ("s - 1".to_string(), 1, Rational::new(5, 6)),
                ("s + 1".to_string(), 1, Rational::new(2, 3)),
                ("oo".to_string(), 3, Rational::new(3, 2)),
            ]
        );
    }

    #[test]
    fn gram_of_q_and_r() {
        let g = height_gram(&[named("Q"), named("R")]).unwrap();
        let one = Rational::from(1);
        let zero = Rational::from(0);
        assert_eq!(g.matrix, vec![vec![one.clone(), zero.clone()], vec![zero, one.clone()]]);
        assert_eq!(g.determinant, one);
        assert_eq!(height_pairing(&named("P"), &named("R")).unwrap(), Rational::from(0));
    }

    #[test]
    fn torsion() {
        let t = torsion_certificate().unwrap();
        assert_eq!(t.p_order, Some(3));
        assert_eq!(t.x_2r_plus_p, Qs::parse("(4*s^4 - 24*s^3 + 40*s^2 - 8*s + 4)/(s^2 - 2*s + 1)").unwrap());
        assert_eq!(t.v_at_one, -2);
        let roots: Vec<(u32, bool, usize, usize)> = t
            .multiples
            .iter()
            .map(|m| (m.m, m.nonzero, m.rational_roots.len(), m.roots_above_one))
            .collect();
        // 12R = 6(2R + P) reduces to O at s = 1
        assert_eq!(roots, vec![(8, true, 0, 0), (10, true, 0, 0), (12, true, 2, 0)]);
        assert_eq!(t.multiples[2].rational_roots, vec![Rational::from(1), Rational::from(1)]);
        assert_eq!(t.multiples[0].denominator_degree, 60);
    }

    #[test]
    fn report_and_discriminant() {
        let r = mw_report().unwrap();
        assert_eq!(r.structure, "Z^2 x Z/3Z");
        assert_eq!((r.trivial_excess, r.rho, r.simple_component_product), (14, 18, 324));
        assert_eq!(ns_discriminant(&r), Rational::from(-36));
    }

    #[test]
    fn quartic_and_certificate() {
        let q = halving_quartic().unwrap();
        assert_eq!(q.degree(), Some(4));
        let c0 = [gs("8*s^2"), gs("s - 1").pow(2), gs("s + 1").pow(3), Gs::s().add(&gi())]
            .iter()
            .fold(Gs::one(), |a, f| a.mul(f));
        assert_eq!(q.coeff(0), c0);
        assert_eq!(q.coeff(4), Gs::one());
        let cert = two_divisibility().unwrap();
        assert_eq!(cert.exponent_options, [vec![0], vec![1], vec![0, 1], vec![0, 1]]);
        assert_eq!(cert.cases.len(), 4);
        assert!(cert.no_solution);
    }

    #[test]
    fn conjugation() {
        let q = named("Q");
        assert_eq!(q.conjugate(), q.point.neg());
        let r = named("R");
        assert_eq!(r.conjugate(), r.point);
        assert_eq!(q.field, FieldTag::Gaussian);
        assert_eq!(r.field, FieldTag::Rational);
    }

    #[test]
    fn combinations() {
        let s = Section::parse_combination("Q + R").unwrap();
        assert_eq!(height(&gaussian_curve(), &s.point).unwrap(), Rational::from(2));
        let p3 = Section::parse_combination("3P").unwrap();
        assert!(p3.point.is_infinity());
        assert!(Section::parse_combination("2X").is_err());
    }

    fn combination(a: i64, b: i64) -> Section {
        Section::parse_combination(&format!("{a}Q{b:+}R")).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn pairing_is_symmetric_and_bilinear(a in -2i64..=2, b in -2i64..=2, c in -2i64..=2, d in -2i64..=2) {
            let (s, t) = (combination(a, b), combination(c, d));
            let st = height_pairing(&s, &t).unwrap();
            prop_assert_eq!(&st, &height_pairing(&t, &s).unwrap());
            let (q, r) = (named("Q"), named("R"));
            let [qq, qr, rr] = [(&q, &q), (&q, &r), (&r, &r)].map(|(x, y)| height_pairing(x, y).unwrap());
            let r_ = |n: i64| Rational::from(n);
            let expect = &(&(&r_(a * c) * &qq) + &(&r_(a * d + b * c) * &qr)) + &(&r_(b * d) * &rr);
            prop_assert_eq!(&st, &expect);
            prop_assert!(st.is_integer());
            let curve = gaussian_curve();
            for sec in [&s, &t] {
                if sec.point.is_infinity() {
                    continue;
                }
                for comp in components(&curve, &sec.point).unwrap() {
                    prop_assert!((&comp.contribution * &r_(6)).is_integer(), "{:?}", comp);
                }
            }
        }
    }
}
