use num_complex::Complex64;
use std::f64::consts::TAU;
use whitham_field::{ComplexField, Grid1D, RealField};

use crate::{NlsError, NlsState, WaveParams};

/// Number of carrier oscillations that fit the fast domain, if the carrier
/// is admissible there: k·L must be an integer multiple of 2π for Ψ to be
/// single-valued on the torus.
pub(crate) fn carrier_cycles(k: f64, domain: f64) -> Result<f64, NlsError> {
    let cycles = k * domain / TAU;
    let rounded = cycles.round();
    if (cycles - rounded).abs() > 1e-9 * cycles.abs().max(1.0) {
        return Err(NlsError::NonCommensurateCarrier {
            k,
            domain,
            nearest: rounded * TAU / domain,
        });
    }
    Ok(rounded)
}

/// Samples the modulated wavetrain Ψ(0, x) = e^{r₀(εx)}·e^{i(kx + ε⁻¹φ₀(εx))}
/// on a fast grid of `n_fast` points spanning L_fast = L_slow/ε.
///
/// The slow profiles r₀ and φ₀ are evaluated at εx by trigonometric
/// interpolation (exact on their resolved band). The carrier must fit the
/// fast lattice, k·L_fast ∈ 2π·ℤ, and must be resolved by at least 16 grid
/// points per oscillation; φ₀ is periodic whenever it is the zero-mean
/// antiderivative of a zero-mean wavenumber perturbation.
pub fn modulated_initial_data(
    r0: &RealField,
    phi0: &RealField,
    params: &WaveParams,
    eps: f64,
    n_fast: usize,
) -> Result<NlsState, NlsError> {
    if !r0.grid().same_as(&phi0.grid()) {
        return Err(NlsError::InvalidArgument {
            reason: "r₀ and φ₀ must share one slow grid".to_string(),
        });
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(NlsError::InvalidArgument {
            reason: format!("ε must be positive and finite, got {eps}"),
        });
    }
    let l_fast = r0.grid().length() / eps;
    let fast = Grid1D::new(n_fast, l_fast)?;
    let cycles = carrier_cycles(params.k(), l_fast)?;
    if cycles != 0.0 {
        let points_per_wavelength = n_fast as f64 / cycles.abs();
        if points_per_wavelength < 16.0 {
            return Err(NlsError::CarrierUnderResolved {
                points_per_wavelength,
            });
        }
    }
    let r_fast = r0.interpolate_to(n_fast)?;
    let phi_fast = phi0.interpolate_to(n_fast)?;
    let k = params.k();
    let values = (0..n_fast)
        .map(|j| {
            let x = fast.x(j);
            Complex64::from_polar(r_fast.value(j).exp(), k * x + phi_fast.value(j) / eps)
        })
        .collect();
    Ok(NlsState {
        t: 0.0,
        psi: ComplexField::from_values(fast, values)?,
    })
}
