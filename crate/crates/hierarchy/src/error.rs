use thiserror::Error;
use whitham_field::FieldError;
use whitham_jets::JetError;
use whitham_wme::WmeError;

#[derive(Debug, Error)]
pub enum HierarchyError {
    #[error("correction order {n} exceeds the supported maximum of 3 levels")]
    UnsupportedOrder { n: usize },

    #[error("invalid hierarchy argument: {reason}")]
    InvalidArgument { reason: String },

    #[error(
        "dual residual paths disagree on {component}: ‖difference‖_H¹ = {mismatch:.3e} \
         exceeds {threshold:.3e}; lift, tendencies and residual algebra are inconsistent"
    )]
    InternalConsistency {
        component: &'static str,
        mismatch: f64,
        threshold: f64,
    },

    #[error(
        "assembled fields are spectrally under-resolved at T = {t}: relative tail \
         {tail_ratio:.3e} exceeds 1e-10, so high derivatives are dominated by truncation; \
         increase the slow grid resolution"
    )]
    UnderResolved { t: f64, tail_ratio: f64 },

    #[error(transparent)]
    Wme(#[from] WmeError),

    #[error(transparent)]
    Jet(#[from] JetError),

    #[error(transparent)]
    Field(#[from] FieldError),
}
