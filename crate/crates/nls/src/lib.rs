//! Direct solver for the defocusing cubic Schrödinger equation
//! i∂_tΨ + ∂²_xΨ + γ|Ψ|²Ψ = 0 (γ = −1) and the machinery that connects it
//! to the slow modulation description: modulated wavetrain initial data,
//! extraction of the relative deviation W from a wave field, the weighted
//! energy that measures W the way the validity estimate does, a static
//! defect check of the equation W satisfies, and the exactly solvable flow
//! linearized about the wavetrain.
//!
//! The split of responsibilities is deliberate: the wave equation is solved
//! directly on the fast grid (ground truth), and the deviation system with
//! its stiff ε⁻¹ terms is only ever evaluated, never integrated.

mod defect;
mod error;
mod extract;
mod init;
mod params;
mod solver;
mod state;
mod wavetrain;

pub use defect::{deviation_equation_defect, DefectReport, SlowBackground};
pub use error::NlsError;
pub use extract::{extract_deviation, validity_energy};
pub use init::modulated_initial_data;
pub use params::{WaveParams, GAMMA};
pub use solver::NlsSolver;
pub use state::{DeviationState, NlsState};
pub use wavetrain::{
    conserved_quadratic, wavetrain_eigenvalues, wavetrain_linearized, wavetrain_symbol,
    WavetrainTrajectory,
};
