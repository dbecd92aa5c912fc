//! The acceptance gate: every numbered criterion must pass within its
//! wall-clock budget. One line is printed per criterion; run with
//! `--nocapture` to see them as they finish.

use cms_core::suite::{budget_seconds, run_criterion, ALL_CRITERIA};

fn check(id: u32) {
    let report = run_criterion(id);
    println!("{}", report.render_line());
    assert!(report.passed, "criterion {id} failed: {}", report.details);
    let budget = budget_seconds(id);
    assert!(
        report.seconds < budget,
        "criterion {id} took {:.2}s, budget {budget}s",
        report.seconds
    );
}

#[test]
fn criterion_01_jordan_table() {
    check(1);
}

#[test]
fn criterion_02_character_crosscheck() {
    check(2);
}

#[test]
fn criterion_03_commutativity() {
    check(3);
}

#[test]
fn criterion_04_hc_membership() {
    check(4);
}

#[test]
fn criterion_05_spectral_vs_combinatorics() {
    check(5);
}

#[test]
fn criterion_06_typicality_equivalence() {
    check(6);
}

#[test]
fn criterion_07_odd_reflection() {
    check(7);
}

#[test]
fn criterion_08_kac_flags() {
    check(8);
}

#[test]
fn criterion_09_operator_bridge() {
    check(9);
}

#[test]
fn criterion_10_generator_quasi_invariance() {
    check(10);
}

#[test]
fn all_criteria_enumerated() {
    assert_eq!(ALL_CRITERIA, [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
}
