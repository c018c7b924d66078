//! Acceptance gate: one test per headline criterion, each printing a single
//! pass/fail line with the measured quantities. Run with
//! `cargo test -p whitham-harness --test acceptance -- --nocapture`
//! (or via the `acceptance_gate` example for a standalone binary).

use whitham_harness as lab;
use whitham_harness::CriterionResult;

fn check(result: CriterionResult) {
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_1_modulation_energy_is_conserved() {
    check(lab::criterion_energy_conservation());
}

#[test]
fn criterion_2_residual_sup_norms_scale_with_hierarchy_depth() {
    check(lab::criterion_residual_order());
}

#[test]
fn criterion_3_nls_deviation_confirms_validity_order() {
    check(lab::criterion_validity_order());
}

#[test]
fn criterion_4_residual_routes_agree() {
    check(lab::criterion_residual_consistency());
}

#[test]
fn criterion_5_forcing_matches_hand_derived_oracles() {
    check(lab::criterion_forcing_oracle());
}

#[test]
fn criterion_6_exact_wavetrain_data_sits_at_roundoff() {
    check(lab::criterion_wavetrain_exactness());
}

#[test]
fn criterion_7_linearized_wavetrain_growth_is_secular_not_exponential() {
    check(lab::criterion_stability_structure());
}

#[test]
fn criterion_8_modulation_system_stays_hyperbolic() {
    check(lab::criterion_hyperbolicity());
}

#[test]
fn criterion_9_reference_integrators_self_converge_at_design_order() {
    check(lab::criterion_self_convergence());
}
