//! One line per acceptance criterion, followed by the families behind it.
//! Exits nonzero if any failure is not in `KNOWN_UNMET`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cartan_core::suites::{self, Report};

/// Families that fail by design; see the README.
const KNOWN_UNMET: &[(&str, &str)] = &[("table2", "r4-33-terms")];

const SEED: u64 = 0x5eed;

struct Criterion {
    number: usize,
    title: &'static str,
    limit: Duration,
    run: fn() -> Vec<Report>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { number: 1, title: "iota reference values", limit: Duration::from_secs(1), run: || vec![suites::table1()] },
        Criterion { number: 2, title: "K3 reference values", limit: Duration::from_secs(5), run: || vec![suites::table2()] },
        Criterion { number: 3, title: "contraction", limit: Duration::from_secs(30), run: || vec![suites::contraction(5)] },
        Criterion { number: 4, title: "resolution", limit: Duration::from_secs(30), run: || vec![suites::resolution(5, 6)] },
        Criterion {
            number: 5,
            title: "homotopies and oracle",
            limit: Duration::from_secs(120),
            run: || vec![suites::homotopy(&[3, 5], 4, &[(3, 4), (5, 2)]), suites::oracle(5, 6, 5)],
        },
        Criterion {
            number: 6,
            title: "Cartan coboundary",
            limit: Duration::from_secs(600),
            run: || {
                let mut stretch = suites::cartan(5, 1, 0, SEED);
                stretch.suite = "cartan-p5".into();
                vec![suites::cartan(3, 2, 2, SEED), stretch]
            },
        },
        Criterion { number: 7, title: "Steenrod sanity", limit: Duration::from_secs(120), run: || vec![suites::steenrod(3)] },
        Criterion { number: 8, title: "structure maps", limit: Duration::from_secs(120), run: || vec![suites::structure(SEED, 3)] },
    ]
}

fn known(suite: &str, id: &str) -> bool {
    KNOWN_UNMET.iter().any(|&(s, i)| s == suite && i == id)
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut lines = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let reports = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let passed = reports.iter().all(Report::passed) && in_time;
        let status = if passed { "PASS" } else { "FAIL" };
        let line = format!(
            "criterion {}: {status}  {} ({:.2}s, limit {}s)",
            c.number,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        println!("{line}");
        lines.push(line);
        if !in_time {
            println!("    over the time limit");
            unexpected += 1;
        }
        for r in &reports {
            for check in &r.checks {
                let mark = if check.passed() {
                    "ok  "
                } else if known(&r.suite, &check.id) {
                    "FAIL (known)"
                } else {
                    unexpected += 1;
                    "FAIL"
                };
                println!("    {mark} {}/{} ({} cases)", r.suite, check.id, check.cases);
                if let Some(f) = &check.first_failure {
                    for l in f.lines() {
                        println!("        {l}");
                    }
                }
            }
        }
    }
    println!();
    for l in &lines {
        println!("{l}");
    }
    if unexpected == 0 {
        println!("acceptance: every failure is a known unmet criterion");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failures");
        ExitCode::FAILURE
    }
}
