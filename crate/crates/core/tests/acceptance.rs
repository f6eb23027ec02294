//! Runs the full sweep suites at their stated sizes and prints one verdict
//! line per criterion. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wallman_lab::sweep::{run_suite, SuiteReport, SweepOptions, SUITES};

struct Criterion {
    number: usize,
    name: &'static str,
    suite: &'static str,
    limit: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: [Criterion; 8] = [
    Criterion { number: 1, name: "duality sweep", suite: "duality", limit: secs(60) },
    Criterion { number: 2, name: "formula/topology agreement", suite: "formulas", limit: secs(60) },
    Criterion { number: 3, name: "surjection oracle equivalence", suite: "surjections", limit: secs(300) },
    Criterion { number: 4, name: "self-representation", suite: "self-representation", limit: secs(60) },
    Criterion { number: 5, name: "EF correctness", suite: "ef", limit: secs(120) },
    Criterion { number: 6, name: "model finder", suite: "modelfinder", limit: secs(300) },
    Criterion { number: 7, name: "chicane machinery", suite: "chicanes", limit: secs(120) },
    Criterion { number: 8, name: "interval lattice", suite: "intervals", limit: secs(60) },
];

fn summary(r: &SuiteReport) -> String {
    let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!("{} cases, {} failures", r.cases, r.failures.len());
    if !counts.is_empty() {
        s.push_str(&format!(", {}", counts.join(" ")));
    }
    s
}

fn all_reports(opts: &SweepOptions) -> Vec<String> {
    SUITES
        .iter()
        .map(|s| serde_json::to_string(&run_suite(s, opts).expect("known suite")).expect("report serializes"))
        .collect()
}

fn main() -> ExitCode {
    let opts = SweepOptions::from_env(1);
    let mut all_ok = true;

    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_suite(c.suite, &opts).expect("known suite");
        let elapsed = start.elapsed();
        let ok = report.passed() && elapsed < c.limit;
        all_ok &= ok;
        println!(
            "criterion {} [{}]: {} ({}, {:.2}s of {}s)",
            c.number,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            summary(&report),
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for f in report.failures.iter().take(5) {
            println!("    {f}");
        }
    }

    let start = Instant::now();
    let first = all_reports(&opts);
    let second = all_reports(&opts);
    let parallel = all_reports(&SweepOptions { jobs: 4, ..opts });
    let mut mismatches = Vec::new();
    for (i, suite) in SUITES.iter().enumerate() {
        if first[i] != second[i] {
            mismatches.push(format!("{suite}: repeat run differs"));
        }
        if first[i] != parallel[i] {
            mismatches.push(format!("{suite}: jobs 1 vs 4 differs"));
        }
    }
    let ok = mismatches.is_empty();
    all_ok &= ok;
    println!(
        "criterion 9 [determinism]: {} ({} suites x 3 runs, {} mismatches, {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        SUITES.len(),
        mismatches.len(),
        start.elapsed().as_secs_f64()
    );
    for m in &mismatches {
        println!("    {m}");
    }

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
