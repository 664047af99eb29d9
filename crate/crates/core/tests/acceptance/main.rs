//! End-to-end acceptance checks. Each criterion prints one `PASS` or `FAIL`
//! line with its measured numbers; the process fails if any criterion that
//! is expected to hold does not.

#[path = "../common/mod.rs"]
mod common;

mod constructions;
mod oracle;
mod strata;

use std::process::ExitCode;
use std::time::Instant;

/// Outcome of one criterion.
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
    /// Failure is a known limit of the search budget, not a wrong answer.
    pub budget_limited: bool,
}

impl Verdict {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into(), budget_limited: false }
    }
}

type Criterion = fn() -> Verdict;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Criterion); 8] = [
        (1, "construction deltas", constructions::deltas),
        (2, "validator soundness", constructions::soundness),
        (3, "worked examples", constructions::figures),
        (4, "gonality intervals against the oracle", oracle::interval_sweep),
        (5, "stratum membership", strata::membership),
        (6, "dimension arithmetic", strata::dimensions),
        (7, "sampled injectivity", strata::injectivity),
        (8, "realizability against permutation enumeration", oracle::realizability),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut hard_failures = 0;
    for (id, name, check) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = check();
        let secs = start.elapsed().as_secs_f64();
        let status = match (v.pass, v.budget_limited) {
            (true, _) => "PASS",
            (false, true) => "FAIL (search budget)",
            (false, false) => "FAIL",
        };
        println!("criterion {id} {status}: {name}: {} [{secs:.1} s]", v.detail);
        if !v.pass && !v.budget_limited {
            hard_failures += 1;
        }
    }
    if hard_failures > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
