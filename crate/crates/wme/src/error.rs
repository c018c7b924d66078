use thiserror::Error;
use whitham_field::FieldError;

#[derive(Debug, Error)]
pub enum WmeError {
    #[error("invalid integration window: {reason}")]
    InvalidWindow { reason: String },

    #[error(
        "time step {dt:.6e} exceeds the advective stability cap {cap:.6e} at step {step}; \
         reduce dt below the characteristic-speed limit"
    )]
    TimeStepExceedsCfl { dt: f64, cap: f64, step: usize },

    #[error("solution blew up: non-finite values appeared at step {step} (t = {time:.6})")]
    SolutionBlowUp { step: usize, time: f64 },

    #[error(
        "solution left the smooth modulation regime at step {step} (t = {time:.6}): \
         H² size {norm:.6e} exceeded the doubling threshold {threshold:.6e}"
    )]
    SmoothnessLost {
        step: usize,
        time: f64,
        norm: f64,
        threshold: f64,
    },

    #[error("linearized solve must ride the background time grid: {reason}")]
    TimeGridMismatch { reason: String },

    #[error(transparent)]
    Field(#[from] FieldError),
}
