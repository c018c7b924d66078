//! Correction hierarchy on top of the leading-order modulation flow, with
//! the phase lift and the residual measures of the reconstructed wavetrain.
//!
//! A [`Hierarchy`] holds the base trajectory and n ≤ 3 correction levels,
//! each solving the linearized system with a forcing extracted by machine
//! jet substitution from the levels below. Assembled states r̂ = r + ε²r₁ +
//! ⋯ and their recomputed tendencies feed two independent routes to the
//! modulation residuals:
//!
//! - a formula route through the lift identity ∂_X φ̂ = û − I, and
//! - a defect route that substitutes (Â, φ̂) into the modulation equations.
//!
//! The two routes share one phase-tendency field G per instant and must
//! agree to near roundoff; [`residuals`] enforces that agreement and fails
//! with an internal-consistency error when it is lost.

mod error;
mod hierarchy;
mod phase;
mod residual;

pub use error::HierarchyError;
pub use hierarchy::{build_hierarchy, Hierarchy, MAX_LEVELS};
pub use phase::{g_field, lift_phase, PhaseLift, PhaseSample};
pub use residual::{residuals, ResidualSample, ResidualSeries};
