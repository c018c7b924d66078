use crate::NlsError;

/// Cubic coefficient of the defocusing Schrödinger equation
/// i∂_tΨ + ∂²_xΨ + γ|Ψ|²Ψ = 0. Everything here is pinned to γ = −1.
pub const GAMMA: f64 = -1.0;

/// Parameters of the carrier wavetrain Ψ₀·e^{i(ωt + kx)}.
///
/// The amplitude is normalized to Ψ₀ = 1, which leaves the wavenumber k as
/// the only free parameter; the temporal frequency is then fixed by the
/// nonlinear dispersion relation γΨ₀² = ω + k².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    k: f64,
    omega: f64,
}

impl WaveParams {
    /// Normalized wavetrain amplitude.
    pub const PSI0: f64 = 1.0;

    pub fn new(k: f64) -> Result<Self, NlsError> {
        if !k.is_finite() {
            return Err(NlsError::InvalidArgument {
                reason: format!("carrier wavenumber must be finite, got {k}"),
            });
        }
        let omega = GAMMA * Self::PSI0 * Self::PSI0 - k * k;
        Ok(Self { k, omega })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Temporal frequency ω = γΨ₀² − k² = −1 − k².
    pub fn omega(&self) -> f64 {
        self.omega
    }
}
