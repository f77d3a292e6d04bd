//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing the stated time budget.
//!
//! Criterion 6 is expected to stay red: its distinct-entry lower-bound
//! sub-check is falsified by enumeration (the Lucas-type start (2, 1)
//! produces a kernel vector with pairwise distinct entries inside the
//! claimed box). The test states the counterexample rather than hiding it.

use std::time::{Duration, Instant};

use rainbow_core::acceptance::{self, CriterionResult};

fn run(result: CriterionResult, budget: Duration, elapsed: Duration) {
    let status = if result.passed { "PASS" } else { "FAIL" };
    println!(
        "criterion {:02} [{status}] {} ({} ms)",
        result.id,
        result.name,
        elapsed.as_millis()
    );
    for line in &result.details {
        println!("    {line}");
    }
    assert!(
        elapsed <= budget,
        "criterion {} exceeded its {}s budget ({} ms)",
        result.id,
        budget.as_secs(),
        elapsed.as_millis()
    );
    assert!(
        result.passed,
        "criterion {} failed:\n{}",
        result.id,
        result.details.join("\n")
    );
}

macro_rules! criterion_test {
    ($test_name:ident, $func:ident, $budget_secs:expr) => {
        #[test]
        fn $test_name() {
            let start = Instant::now();
            let result = acceptance::$func();
            run(result, Duration::from_secs($budget_secs), start.elapsed());
        }
    };
}

criterion_test!(criterion_01_checker_verdicts, criterion_01, 1);
criterion_test!(criterion_02_condition_equivalence, criterion_02, 30);
criterion_test!(criterion_03_rainbow_number_desk_verification, criterion_03, 300);
criterion_test!(criterion_04_anti_rainbow_construction, criterion_04, 5);
criterion_test!(criterion_05_ehrhart_suite, criterion_05, 60);
criterion_test!(criterion_06_fibonacci_claims, criterion_06, 120);
criterion_test!(criterion_07_counting_bound, criterion_07, 120);
criterion_test!(criterion_08_robust_experiment, criterion_08, 120);
criterion_test!(criterion_09_graph_corollary, criterion_09, 180);
