use thiserror::Error;
use whitham_field::FieldError;

#[derive(Debug, Error)]
pub enum NlsError {
    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },

    #[error(
        "carrier wavenumber {k} does not fit the fast domain of length {domain}: \
         k·L must be an integer multiple of 2π; the nearest admissible carrier is {nearest}"
    )]
    NonCommensurateCarrier { k: f64, domain: f64, nearest: f64 },

    #[error(
        "fast grid resolves the carrier with only {points_per_wavelength:.2} points per \
         wavelength, below the required 16; increase the fast resolution"
    )]
    CarrierUnderResolved { points_per_wavelength: f64 },

    #[error("solution blew up (non-finite values) advancing to t = {t}")]
    BlowUp { t: f64 },

    #[error(
        "deviation extraction is aliased: {tail_fraction:.3e} of the demodulated energy \
         lies above the slow band (limit 1e-2); the envelope is not resolved on the slow grid"
    )]
    AliasedExtraction { tail_fraction: f64 },

    #[error(transparent)]
    Field(#[from] FieldError),
}
