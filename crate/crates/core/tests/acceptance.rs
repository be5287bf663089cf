//! One test per acceptance criterion. Each drives the corresponding named
//! check from the verify registry at the stated parameters and prints a
//! single verdict line with the measured gaps and runtime.

use plmv::verify::{run_check, CheckOutcome, Suite, VerifyConfig};

fn acceptance_config() -> VerifyConfig {
    VerifyConfig {
        truncation: 1_000_000,
        precision: 30,
        max_k: 3,
    }
}

fn drive(name: &str, budget_ms: u128) -> CheckOutcome {
    let out = run_check(name, &acceptance_config())
        .unwrap_or_else(|e| panic!("{name} failed to run: {e}"));
    println!(
        "[{}] {} ({}, {} ms): {}",
        if out.passed { "PASS" } else { "FAIL" },
        out.name,
        out.suite,
        out.runtime_ms,
        out.detail
    );
    assert!(out.passed, "{name}: {}", out.detail);
    assert!(
        out.runtime_ms <= budget_ms,
        "{name}: took {} ms, budget {budget_ms} ms",
        out.runtime_ms
    );
    out
}

#[test]
fn criterion_01_bernoulli_collapse_to_single_zeta() {
    let out = drive("sk2_bernoulli_identity", 1_000);
    assert_eq!(out.suite, Suite::Exact);
}

#[test]
fn criterion_02_bernoulli_three_forms_agree() {
    let out = drive("bernoulli_three_forms", 10_000);
    assert_eq!(out.suite, Suite::Exact);
}

#[test]
fn criterion_03_closed_form_ladder_values() {
    let out = drive("closed_form_examples", 1_000);
    assert_eq!(out.suite, Suite::Exact);
    // the one coefficient settled by the oracle rather than exact routes
    assert!(out.detail.contains("93/256"));
    assert!(out.detail.contains("93/128"));
}

#[test]
fn criterion_04_oracle_matches_closed_forms() {
    let out = drive("oracle_vs_closed_forms", 60_000);
    assert_eq!(out.suite, Suite::Numeric);
}

#[test]
fn criterion_05_genfun_coefficients_exact() {
    let out = drive("genfun_p2_matches_closed", 10_000);
    assert_eq!(out.suite, Suite::Exact);
}

#[test]
fn criterion_06_genfun_general_vs_oracle() {
    let out = drive("genfun_general_vs_oracle", 60_000);
    assert_eq!(out.suite, Suite::Numeric);
}

#[test]
fn criterion_07_plethysm_brute_force() {
    let out = drive("plethysm_brute_force", 10_000);
    assert_eq!(out.suite, Suite::Exact);
}

#[test]
fn criterion_08_decomposition_lemma_suite() {
    let out = drive("decomposition_lemmas", 60_000);
    assert_eq!(out.suite, Suite::Numeric);
}

#[test]
fn criterion_09_double_zeta_formulas() {
    let out = drive("double_zeta_formulas", 30_000);
    assert_eq!(out.suite, Suite::Numeric);
}

#[test]
fn criterion_10_finite_partial_convergence() {
    let out = drive("finite_partial_convergence", 30_000);
    assert_eq!(out.suite, Suite::Numeric);
}
