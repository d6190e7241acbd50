//! Acceptance suite: one test per reference-value criterion.
//!
//! Each test runs the corresponding checker from [`buchstaber::verify`]
//! and prints its single pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).  The seed for the
//! randomized criteria can be overridden with the `TEST_SEED` environment
//! variable and is printed on every failure.

use buchstaber::verify::{run_criterion, CriterionStatus, VerifyOptions, DEFAULT_SEED};

fn options() -> VerifyOptions {
    let seed = std::env::var("TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    VerifyOptions {
        workers: 1,
        skip_slow: false,
        seed,
    }
}

fn run(id: u32) {
    let options = options();
    let report = run_criterion(id, &options).expect("criterion exists");
    println!("{}", report.line());
    assert_eq!(
        report.status,
        CriterionStatus::Pass,
        "{} [seed {}]",
        report.line(),
        options.seed
    );
}

#[test]
fn criterion_1_mod3_skeleton_table() {
    run(1);
}

#[test]
fn criterion_2_four_prime_skeleton_table() {
    run(2);
}

#[test]
fn criterion_3_nonexistence_search() {
    run(3);
}

#[test]
fn criterion_4_constructed_witnesses() {
    run(4);
}

#[test]
fn criterion_5_universal_invariants() {
    run(5);
}

#[test]
fn criterion_6_counting_formula() {
    run(6);
}

#[test]
fn criterion_7_closed_forms_vs_search() {
    run(7);
}

#[test]
fn criterion_8_monotonicity_audit() {
    run(8);
}

#[test]
fn criterion_9_property_suites() {
    run(9);
}
