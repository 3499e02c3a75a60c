//! Acceptance suite: criteria 1-9 at the `desk` level, each with a wall-clock
//! bound. Every comparison is exact (Gaussian rationals, zero tolerance).
//!
//! Run with `cargo test -p clifford-mackey-cli --test acceptance -- --nocapture`
//! to see the PASS/FAIL lines.

use std::time::{Duration, Instant};

use clifford_mackey::spherical::subset_sum_lemma;
use clifford_mackey::Subset;
use clmackey::args::DEFAULT_SEED;
use clmackey::verify::{run_criterion, CheckResult};
use clmackey::Level;

/// Zero: all values are compared exactly.
const TOLERANCE: f64 = 0.0;

/// Wall-clock bound per criterion, in seconds.
const BOUNDS: [(u8, u64); 9] = [
    (1, 60),
    (2, 60),
    (3, 10),
    (4, 10),
    (5, 120),
    (6, 120),
    (7, 300),
    (8, 300),
    (9, 60),
];

const LEMMA_BOUND: Duration = Duration::from_secs(5);
const LEMMA_MAX: u32 = 10;

struct Line {
    criterion: u8,
    passed: bool,
    text: String,
}

fn judge(result: &CheckResult, bound: Duration, elapsed: Duration) -> Line {
    let in_time = elapsed <= bound;
    let passed = result.passed && in_time;
    let timing = format!(
        "{:.2}s / {}s{}",
        elapsed.as_secs_f64(),
        bound.as_secs(),
        if in_time { "" } else { " (too slow)" }
    );
    Line {
        criterion: result.criterion,
        passed,
        text: format!(
            "{} criterion {}: {} [{}] {}; {}",
            if passed { "PASS" } else { "FAIL" },
            result.criterion,
            result.title,
            result.range,
            timing,
            result.detail
        ),
    }
}

fn lemma_line() -> Line {
    let start = Instant::now();
    let ok = (0..=LEMMA_MAX).all(|n| {
        Subset::all(n).all(|u| subset_sum_lemma(u, n).unwrap() == i64::from(u.is_empty()))
    });
    let elapsed = start.elapsed();
    let passed = ok && elapsed <= LEMMA_BOUND;
    Line {
        criterion: 6,
        passed,
        text: format!(
            "{} criterion 6 (lemma): subset sums over all U, n <= {LEMMA_MAX} [{:.2}s / {}s]",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            LEMMA_BOUND.as_secs()
        ),
    }
}

#[test]
fn acceptance() {
    assert_eq!(TOLERANCE, 0.0);
    let mut lines = Vec::new();
    for (criterion, secs) in BOUNDS {
        let start = Instant::now();
        let result = run_criterion(criterion, Level::Desk, DEFAULT_SEED);
        let elapsed = start.elapsed();
        lines.push(judge(&result, Duration::from_secs(secs), elapsed));
        if criterion == 6 {
            lines.push(lemma_line());
        }
    }
    println!("acceptance (level desk, seed {DEFAULT_SEED}, exact arithmetic)");
    for l in &lines {
        println!("{}", l.text);
    }
    let failed: Vec<u8> = lines
        .iter()
        .filter(|l| !l.passed)
        .map(|l| l.criterion)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// The command-line surface of criteria 1 and 2.
#[test]
fn acceptance_gelfand_commands() {
    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("clmackey").chain(args.iter().copied());
        let code = clmackey::run(argv, &mut out, &mut err);
        assert_eq!(code, 0);
        String::from_utf8(out).unwrap()
    };
    let start = Instant::now();
    for n in 1..=6u32 {
        let s = n.to_string();
        let out = run(&["gelfand", &s, "--subgroup", &s]);
        assert!(out.contains(": Gelfand pair"), "{out}");
    }
    for n in 2..=6u32 {
        let (s, m) = (n.to_string(), (n - 1).to_string());
        let out = run(&["gelfand", &s, "--subgroup", &m]);
        if n % 2 == 1 {
            assert!(out.contains(": Gelfand pair"), "{out}");
        } else {
            assert!(
                out.contains("NOT a Gelfand pair; witness (rho, rho, chi:{}) multiplicity 2"),
                "{out}"
            );
        }
    }
    assert!(start.elapsed() <= Duration::from_secs(120));
}
