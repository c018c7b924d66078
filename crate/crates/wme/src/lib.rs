//! Leading-order modulation dynamics for a defocusing cubic-Schrödinger
//! wavetrain: a shallow-water-type system in the log amplitude r and local
//! wavenumber shift u, its linearization along a stored trajectory, and the
//! energies that control both.
//!
//! Space is spectral (through `whitham-field`), time is classical RK4 with
//! dense storage so that corrections, phase lifts and residual evaluations
//! can sample the solution anywhere in the window. Tendencies written as
//! exact spectral derivatives of flux fields conserve the mean of u to
//! roundoff, which the energy argument relies on.

mod energy;
mod error;
mod solver;
mod state;
mod system;

pub use energy::{gronwall_check, linearized_energy, wme_energy, GronwallReport};
pub use error::WmeError;
pub use solver::{linearized_solve, wme_integrate};
pub use state::{BaseTrajectory, LinTrajectory, LinearizedState, ModulationState};
pub use system::{characteristic_speeds, cfl_max_dt, linearized_rhs, wme_rhs, GAMMA};
