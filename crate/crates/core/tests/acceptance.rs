//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (plus per-assertion detail) and asserting the verdict.

use std::sync::Mutex;

use vrsphere::accept::run_criterion;

/// The criteria assert wall-clock budgets, so they must not share CPU with
/// one another; this serializes them regardless of the harness thread count.
static SERIAL: Mutex<()> = Mutex::new(());

fn run(id: usize) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let report = run_criterion(id);
    println!("{report}");
    for d in &report.details {
        println!("    {d}");
    }
    assert!(
        report.passed,
        "criterion {id} ({}) failed:\n{}",
        report.name,
        report.details.join("\n")
    );
}

#[test]
fn criterion_01_circle_closed_forms() {
    run(1);
}

#[test]
fn criterion_02_table_tight_values() {
    run(2);
}

#[test]
fn criterion_03_table_non_tight_bounds() {
    run(3);
}

#[test]
fn criterion_04_homology_oracle() {
    run(4);
}

#[test]
fn criterion_05_brute_force_equivalence() {
    run(5);
}

#[test]
fn criterion_06_conic_soundness() {
    run(6);
}

#[test]
fn criterion_07_odd_map() {
    run(7);
}

#[test]
fn criterion_08_interval_tables() {
    run(8);
}

#[test]
fn criterion_09_rigidity_persistence() {
    run(9);
}

#[test]
fn criterion_10_continuum_claims_coverage() {
    run(10);
}
