//! Experiment orchestration for the modulated-wavetrain laboratory:
//! convergence ladders over the scale separation ε, residual-order and
//! validity-order measurements, stability demonstrations of the linearized
//! wavetrain flow, hyperbolicity classification, slope fitting, and report
//! assembly with content-addressed artifacts.
//!
//! The building blocks live in the lower crates (spectral fields, the
//! modulation system and its correction hierarchy, the wave solver with
//! deviation extraction); this crate wires them into reproducible studies
//! whose rows run in parallel, and stamps every acceptance gate pass/fail
//! into the run report.

mod classify;
mod convergence;
mod criteria;
mod error;
mod fit;
mod orders;
mod profile;
mod report;
mod stability;
mod wme_run;

pub use classify::{
    classify_from_config, classify_hyperbolicity, classify_modulation_run, Classification,
    HyperbolicityField, RunClassification,
};
pub use convergence::{
    run_convergence, ConvergenceConfig, ConvergenceRow, ConvergenceTable, DeviationSample,
    DEGENERATE_FLOOR,
};
pub use criteria::{
    classification_criteria, criterion_energy_conservation, criterion_forcing_oracle,
    criterion_hyperbolicity, criterion_residual_consistency, criterion_residual_order,
    criterion_self_convergence, criterion_stability_structure, criterion_validity_order,
    criterion_wavetrain_exactness, run_acceptance, stability_criteria, table_criteria,
    wme_energy_criterion, CriterionResult,
};
pub use error::HarnessError;
pub use fit::{fit_slope, SlopeFit};
pub use orders::{rk4_self_order, strang_self_order, OrderEstimate};
pub use profile::{initial_pair, ProfileSpec};
pub use report::RunReport;
pub use stability::{run_stability_demo, StabilityConfig, StabilityReport};
pub use wme_run::{run_wme, WmeRunSummary};

/// Sizes the global worker pool that parallel table rows run on. Call once
/// at startup; later calls fail once the pool exists.
pub fn set_thread_count(threads: usize) -> Result<(), HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| HarnessError::InvalidArgument {
            reason: format!("could not size the worker pool: {e}"),
        })
}
