//! The acceptance gate: every verification suite must pass, with one
//! pass/fail line printed per criterion (run with `--nocapture` to see
//! them, or use `auter verify all`).

use auter::verify::{run_suite, SuiteOutcome};

fn run_and_report(name: &str) -> SuiteOutcome {
    let outcome = run_suite(name).expect("known suite");
    println!(
        "criterion {:>2} [{}]: {} ({} ms) — {}",
        outcome.criterion,
        outcome.name,
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.millis,
        outcome.details
    );
    outcome
}

fn assert_suite(name: &str) {
    let outcome = run_and_report(name);
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.details);
    if outcome.budget_is_hard {
        assert!(
            outcome.millis <= outcome.budget_millis,
            "{} exceeded its {} ms budget ({} ms)",
            outcome.name,
            outcome.budget_millis,
            outcome.millis
        );
    }
}

#[test]
fn criterion_01_q2_contractible() {
    assert_suite("q2-contractible");
}

#[test]
fn criterion_02_sphere_p3() {
    assert_suite("sphere-p3");
}

#[test]
fn criterion_03_truncation_p3() {
    assert_suite("truncation-p3");
}

#[test]
fn criterion_04_tilde_q2() {
    assert_suite("tilde-q2");
}

#[test]
fn criterion_05_classification_p3() {
    assert_suite("classification-p3");
}

#[test]
fn criterion_06_nielsen_c() {
    assert_suite("nielsen-c");
}

#[test]
fn criterion_07_q3_omega() {
    assert_suite("q3-omega");
}

#[test]
fn criterion_08_closed_form_p3() {
    assert_suite("tables-p3");
}

#[test]
fn criterion_09_whitehead_norms() {
    assert_suite("whitehead-norms");
}

#[test]
fn criterion_10_integrity() {
    assert_suite("integrity");
}

#[test]
fn criterion_11_singular_families_p5() {
    // The stretch criterion: the math must hold; exceeding the runtime
    // budget only downgrades to a documented limitation.
    let outcome = run_and_report("singular-families-p5");
    assert!(outcome.passed, "{}", outcome.details);
    if outcome.millis > outcome.budget_millis {
        eprintln!(
            "note: singular-families-p5 exceeded its budget ({} ms); documented limitation",
            outcome.millis
        );
    }
}
