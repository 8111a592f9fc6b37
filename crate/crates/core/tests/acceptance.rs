//! Prints one line per criterion and fails on any unexpected result.

use std::io::Write;

use heron_k3::acceptance::{run, Options, Status};

/// Checks that fail for a documented reason: `12R` lies in the kernel of
/// reduction at `s = 1`, so `den(xi_12)` has the root `1` (outside `s > 1`).
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(7, "den(xi_12) has no rational roots")];

#[test]
fn acceptance() {
    let reports = run(Options::default());
    // bypasses libtest capture so the summary shows without --nocapture
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    let mut unexpected = Vec::new();
    for r in &reports {
        let status = match r.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        writeln!(out, "criterion {}: {status} {} [{}]", r.id, r.title, r.module).unwrap();
        for check in &r.checks {
            if check.status != Status::Pass {
                writeln!(out, "    {:?} {}: {}", check.status, check.name, check.detail).unwrap();
            }
            let known = KNOWN_UNATTAINABLE.contains(&(r.id, check.name.as_str()));
            match (check.status, known) {
                (Status::Fail, false) | (Status::Skipped, _) => {
                    unexpected.push(format!("{}: {} ({})", r.id, check.name, check.detail))
                }
                (Status::Pass, true) => unexpected.push(format!("{}: {} now passes", r.id, check.name)),
                _ => {}
            }
        }
    }
    assert_eq!(reports.len(), 8);
    assert!(unexpected.is_empty(), "{unexpected:#?}");
}
