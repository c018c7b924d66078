use thiserror::Error;
use whitham_field::FieldError;
use whitham_hierarchy::HierarchyError;
use whitham_nls::NlsError;
use whitham_wme::WmeError;

/// Errors raised while orchestrating experiments or assembling reports.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },

    #[error("profile data error in {path}: {reason}")]
    ProfileData { path: String, reason: String },

    #[error(transparent)]
    Field(#[from] FieldError),

    #[error(transparent)]
    Wme(#[from] WmeError),

    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),

    #[error(transparent)]
    Nls(#[from] NlsError),

    #[error("report output error: {0}")]
    Io(#[from] std::io::Error),

    #[error("report serialization error: {0}")]
    Json(#[from] serde_json::Error),
}
