use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use heron_k3::acceptance::{self, Options, Status};
use heron_k3::arith::Rational;
use heron_k3::elliptic::CurvePoint;
use heron_k3::heron::{
    family_curve, heronize, param_surface, parse_csv, point_to_triangle, specialize_triangle,
    verify_heron, Triangle, TriangleRecord,
};
use heron_k3::mw::{
    bad_fibers, components, gaussian_curve, mw_report, ns_discriminant, pairing_terms,
    torsion_certificate, two_divisibility, Section,
};
use heron_k3::picard::{count_surface, euler_degree_check, picard_report};

#[derive(Parser, Debug)]
#[command(name = "heron-k3", version, about = "Heron triangles with equal perimeter and area")]
struct Cli {
    /// Write the report to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Print timings to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangles with perimeter 2s(s+1) and area s(s^2-1) from the odd multiples of R.
    Generate {
        #[arg(long, value_parser = parse_rational)]
        s: Rational,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=64))]
        count: u32,
        /// Scale to the least common integral family.
        #[arg(long)]
        integer: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Point of r^2 (x+y+z) = xyz from (u, v, w), and its triangle when positive.
    Param {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        u: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        v: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        w: Rational,
    },
    /// Check that every triangle in a CSV file is Heron with a common perimeter and area.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        perimeter: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        area: Option<Rational>,
    },
    /// Points of the K3 surface over F_{p^n}.
    Count {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        n: u32,
        /// Include per-fiber counts.
        #[arg(long)]
        breakdown: bool,
    },
    /// Frobenius traces on H^2 and the resulting bound on the Picard number.
    Picard {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        /// Point counts for n = 1, 2, 3 instead of counting.
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<u64>>,
    },
    /// Singular fibers of the elliptic fibration.
    Fibers,
    /// Height pairing of two sections given as combinations of P, Q, R.
    Height {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Defaults to `s`.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Mordell-Weil group, rank bookkeeping and the Neron-Severi discriminant.
    Mw,
    /// Certificate that Q + R is not twice a section.
    Divide2,
    /// Run the acceptance suite.
    Selfcheck {
        /// Skip the count over F_1331.
        #[arg(long)]
        fast: bool,
        /// Triangle table to check in place of the bundled one.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse().map_err(|e| format!("{e}"))
}

fn parse_prime(text: &str) -> Result<u64, String> {
    let p: u64 = text.parse().map_err(|_| format!("`{text}` is not an integer"))?;
    if p > 3 && p < 1 << 20 && heron_k3::poly::modp::is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} must be a prime with 3 < p < 2^20"))
    }
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

/// A finished run: text to emit and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn json(value: &impl Serialize) -> Self {
        Outcome {
            text: serde_json::to_string_pretty(value).expect("serializable report") + "\n",
            ok: true,
        }
    }

    fn failed(mut self) -> Self {
        self.ok = false;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli.command);
    if cli.verbose {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text),
        None => io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Generate {
            s,
            count,
            integer,
            format,
        } => generate(s, *count, *integer, *format),
        Command::Param { u, v, w } => param(u, v, w),
        Command::Verify {
            file,
            perimeter,
            area,
        } => verify(file, perimeter.as_ref(), area.as_ref()),
        Command::Count { p, n, breakdown } => count(*p, *n, *breakdown),
        Command::Picard { p, counts } => picard(*p, counts.as_deref()),
        Command::Fibers => fibers(),
        Command::Height { s, t } => height(s, t.as_deref().unwrap_or(s)),
        Command::Mw => mw(),
        Command::Divide2 => divide2(),
        Command::Selfcheck { fast, table } => selfcheck(*fast, table.as_ref()),
    }
}

fn generate(s: &Rational, count: u32, integer: bool, format: Format) -> Result<Outcome, Failure> {
    let mut triangles = Vec::new();
    for n in 1..=count {
        triangles.push(specialize_triangle(n, s).map_err(|e| Failure::Usage(e.to_string()))?);
    }
    let lambda = if integer {
        let h = heronize(&triangles).map_err(|e| Failure::Verification(e.to_string()))?;
        triangles = h.triangles;
        Some(h.lambda)
    } else {
        None
    };
    let text = match format {
        Format::Json => {
            let records: Vec<TriangleRecord> = triangles.iter().map(TriangleRecord::from).collect();
            let value = json!({
                "s": s.to_string(),
                "scale": lambda.map(|l| l.to_string()),
                "triangles": records,
            });
            serde_json::to_string_pretty(&value).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("# a,b,c\n");
            for t in &triangles {
                let [a, b, c] = t.sides();
                out += &format!("{a},{b},{c}\n");
            }
            out
        }
        Format::Table => table(&triangles),
    };
    Ok(Outcome { text, ok: true })
}

fn table(triangles: &[Triangle]) -> String {
    let header = ["n", "a", "b", "c", "perimeter", "area"].map(String::from);
    let mut rows = vec![header];
    for (i, t) in triangles.iter().enumerate() {
        let [a, b, c] = t.sides();
        let area = t.area().map_or("irrational".to_string(), |a| a.to_string());
        rows.push([
            (i + 1).to_string(),
            a.to_string(),
            b.to_string(),
            c.to_string(),
            t.perimeter().to_string(),
            area,
        ]);
    }
    let widths: Vec<usize> = (0..6).map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}

fn param(u: &Rational, v: &Rational, w: &Rational) -> Result<Outcome, Failure> {
    let pt = param_surface(u, v, w)
        .map_err(|e| Failure::Usage(e.to_string()))?
        .canonical();
    let triangle = point_to_triangle(&pt).ok().map(|t| TriangleRecord::from(&t));
    Ok(Outcome::json(&json!({
        "point": [pt.r, pt.x, pt.y, pt.z],
        "triangle": triangle,
    })))
}

#[derive(Serialize)]
struct VerifyRow {
    row: usize,
    a: Rational,
    b: Rational,
    c: Rational,
    perimeter: Rational,
    area: Option<Rational>,
    is_heron: bool,
}

fn verify(file: &PathBuf, perimeter: Option<&Rational>, area: Option<&Rational>) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
    let triangles = parse_csv(&text).map_err(|e| Failure::Verification(e.to_string()))?;
    if triangles.is_empty() {
        return Err(Failure::Verification("no triangles".into()));
    }
    let mut rows = Vec::new();
    for (i, t) in triangles.iter().enumerate() {
        let [a, b, c] = t.sides();
        let report = verify_heron(a, b, c).map_err(|e| Failure::Verification(e.to_string()))?;
        rows.push(VerifyRow {
            row: i + 1,
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            perimeter: report.perimeter,
            area: report.area,
            is_heron: report.is_heron,
        });
    }
    let p0 = perimeter.unwrap_or(&rows[0].perimeter).clone();
    let a0 = area.cloned().or_else(|| rows[0].area.clone());
    let failing: Vec<usize> = rows
        .iter()
        .filter(|r| !r.is_heron || r.perimeter != p0 || r.area != a0)
        .map(|r| r.row)
        .collect();
    let outcome = Outcome::json(&json!({
        "rows": rows,
        "perimeter": p0,
        "area": a0,
        "failing_rows": failing,
        "passed": failing.is_empty(),
    }));
    Ok(if failing.is_empty() { outcome } else { outcome.failed() })
}

fn count(p: u64, n: u32, breakdown: bool) -> Result<Outcome, Failure> {
    let report = count_surface(p, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut value = json!({
        "p": report.p,
        "n": report.n,
        "q": report.q.to_string(),
        "count": report.count.to_string(),
    });
    if breakdown {
        value["fibers"] = serde_json::to_value(&report.fibers).expect("json");
        value["hasse_violations"] = json!(report.hasse_violations().len());
    }
    let outcome = Outcome::json(&value);
    Ok(if report.hasse_violations().is_empty() { outcome } else { outcome.failed() })
}

fn picard(p: u64, counts: Option<&[u64]>) -> Result<Outcome, Failure> {
    let counts = match counts {
        Some(c) if c.len() != 3 => return Err(Failure::Usage("--counts takes three values".into())),
        Some(c) => c.to_vec(),
        None => (1..=3)
            .map(|n| count_surface(p, n).map(|r| r.count))
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let report = picard_report(p, &counts).map_err(|e| Failure::Verification(e.to_string()))?;
    Ok(Outcome::json(&report))
}

fn fibers() -> Result<Outcome, Failure> {
    let curve = family_curve::<Rational>();
    let inv = curve.invariants();
    let list: Vec<Value> = bad_fibers()
        .iter()
        .map(|f| {
            json!({
                "place": f.place.to_string(),
                "kodaira": f.kodaira.to_string(),
                "degree": f.degree(),
                "v_c4": f.v_c4,
                "v_disc": f.v_delta,
                "components": f.components(),
            })
        })
        .collect();
    let total: i64 = bad_fibers().iter().map(|f| f.v_delta * f.degree() as i64).sum();
    let euler = euler_degree_check().map_err(|e| Failure::Verification(e.to_string()))?;
    Ok(Outcome::json(&json!({
        "discriminant": inv.discriminant.to_string(),
        "j": inv.j.map(|j| j.to_string()),
        "fibers": list,
        "euler_number": total,
        "euler_check": euler,
    })))
}

fn section(text: &str) -> Result<Section, Failure> {
    Section::parse_combination(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn coordinates(pt: &CurvePoint<heron_k3::heron::Gs>) -> Value {
    match pt {
        CurvePoint::Infinity => json!("O"),
        CurvePoint::Affine { x, y } => json!({ "x": x.to_string(), "y": y.to_string() }),
    }
}

fn height(s: &str, t: &str) -> Result<Outcome, Failure> {
    let (s, t) = (section(s)?, section(t)?);
    let curve = gaussian_curve();
    let terms = pairing_terms(&curve, &s.point, &t.point).map_err(|e| Failure::Verification(e.to_string()))?;
    let local = |sec: &Section| -> Result<Value, Failure> {
        if sec.point.is_infinity() {
            return Ok(json!([]));
        }
        let c = components(&curve, &sec.point).map_err(|e| Failure::Verification(e.to_string()))?;
        Ok(serde_json::to_value(c).expect("json"))
    };
    Ok(Outcome::json(&json!({
        "s": { "name": s.name, "point": coordinates(&s.point), "components": local(&s)? },
        "t": { "name": t.name, "point": coordinates(&t.point), "components": local(&t)? },
        "terms": terms,
        "pairing": terms.value,
    })))
}

fn mw() -> Result<Outcome, Failure> {
    let torsion = torsion_certificate().map_err(|e| Failure::Verification(e.to_string()))?;
    let report = mw_report().map_err(|e| Failure::Verification(e.to_string()))?;
    Ok(Outcome::json(&json!({
        "report": report,
        "ns_discriminant": ns_discriminant(&report),
        "torsion": torsion,
    })))
}

fn divide2() -> Result<Outcome, Failure> {
    let cert = two_divisibility().map_err(|e| Failure::Verification(e.to_string()))?;
    let ok = cert.no_solution;
    let outcome = Outcome::json(&cert);
    Ok(if ok { outcome } else { outcome.failed() })
}

fn selfcheck(fast: bool, table: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let mut reports = acceptance::run(Options { fast });
    if let Some(path) = table {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let replaced = acceptance::twenty_triangles_from(Some(&text));
        if let Some(slot) = reports.iter_mut().find(|r| r.id == replaced.id) {
            *slot = replaced;
        }
    }
    let mut text = String::new();
    let mut ok = true;
    for r in &reports {
        let status = match r.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        ok &= r.status() != Status::Fail;
        text += &format!("{status} {} {} [{}]\n", r.id, r.title, r.module);
        for check in &r.checks {
            if check.status != Status::Pass {
                text += &format!("  {:?} {}: {}\n", check.status, check.name, check.detail);
            }
        }
    }
    Ok(Outcome { text, ok })
}
