//! Acceptance suite: every verification criterion, one pass/fail line each.
//!
//! The same checks back `ffzeta verify all`; this target exists so that
//! `cargo test` exercises them unconditionally. All comparisons are exact —
//! the only "tolerances" in the suite are equalities of exact objects.

use ffzeta::checks;

fn run_and_report(id: u32) {
    let c = checks::run(id);
    println!(
        "criterion {:2} [{}] {}: {}",
        c.id,
        if c.pass { "pass" } else { "FAIL" },
        c.name,
        c.details
    );
    assert!(c.pass, "criterion {} failed: {}", c.id, c.details);
}

#[test]
fn criterion_01_special_polynomial_q3_13() {
    run_and_report(1);
}

#[test]
fn criterion_02_exact_roots_q2() {
    run_and_report(2);
}

#[test]
fn criterion_03_digit_action_on_zeroes() {
    run_and_report(3);
}

#[test]
fn criterion_04_gauge_invariant_prefix() {
    run_and_report(4);
}

#[test]
fn criterion_05_nonvanishing_triangle() {
    run_and_report(5);
}

#[test]
fn criterion_06_orbit_invariance() {
    run_and_report(6);
}

#[test]
fn criterion_07_collapse_orders() {
    run_and_report(7);
}

#[test]
fn criterion_08_rh_shaped_simplicity() {
    run_and_report(8);
}

#[test]
fn criterion_09_carlitz_von_staudt_clausen() {
    run_and_report(9);
}

#[test]
fn criterion_10_factorial_valuations() {
    run_and_report(10);
}

#[test]
fn criterion_11_carlitz_exp_log() {
    run_and_report(11);
}

#[test]
fn criterion_12_classical_bernoulli() {
    run_and_report(12);
}

#[test]
fn criterion_13_measure_automorphisms() {
    run_and_report(13);
}

#[test]
fn criterion_14_elliptic_trivial_zero_scan() {
    run_and_report(14);
}
