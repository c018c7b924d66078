//! Truncated power-series ("jet") arithmetic in ε² with field-valued
//! coefficients.
//!
//! A [`JetField`] of order `n` represents `a₀ + ε²a₁ + ⋯ + ε^{2n}a_n` with
//! each coefficient a [`RealField`] on a shared grid. Arithmetic closes at
//! the stored order: higher coefficients are dropped, which is exactly the
//! truncation the correction hierarchy needs. Products of coefficients are
//! exactly projected (dealiased), so jet identities hold to roundoff.
//!
//! The crate also provides [`jet_defect_swe`], which substitutes jets into a
//! perturbed shallow-water system (the dispersive ε²-terms entering one jet
//! slot higher than their coefficients), and [`reference`] hand-transcribed
//! forcing/residual formulas used as cross-check oracles.

mod defect;
mod jet;
pub mod reference;

pub use defect::jet_defect_swe;
pub use jet::{JetField, MAX_ORDER};

use thiserror::Error;
use whitham_field::{FieldError, Grid1D};

#[derive(Debug, Error)]
pub enum JetError {
    #[error("jet order {order} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooHigh { order: usize },

    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("jet grid mismatch: {left:?} vs {right:?}")]
    GridMismatch { left: Grid1D, right: Grid1D },

    #[error("a jet needs at least its order-zero coefficient")]
    Empty,

    #[error(transparent)]
    Field(#[from] FieldError),
}
