use num_complex::Complex64;
use whitham_field::{ComplexField, RealField};

use crate::init::carrier_cycles;
use crate::{DeviationState, NlsError, NlsState, WaveParams};

/// Demodulates a wave field against the reconstructed wavetrain and returns
/// the relative deviation W = Ψ̃·e^{−iε⁻¹Θ̂}/Â − 1 on the slow grid, where
/// Θ̂ = ωT + kX + φ̂ and Â = e^{r̂}.
///
/// The demodulated product Ψ̃·e^{−iε⁻¹Θ̂} is slowly varying, so it is
/// restricted to the slow band by spectral projection before the amplitude
/// ratio is taken; the phase φ̂ is carried separately from the non-periodic
/// ramp ωT + kX, which is evaluated in closed form on the fast grid. If
/// more than 1% of the demodulated energy lies above the slow band the
/// envelope was not slow and the extraction reports aliasing instead of
/// returning a corrupted W.
pub fn extract_deviation(
    state: &NlsState,
    r_hat: &RealField,
    phi_hat: &RealField,
    params: &WaveParams,
    eps: f64,
) -> Result<DeviationState, NlsError> {
    if !r_hat.grid().same_as(&phi_hat.grid()) {
        return Err(NlsError::InvalidArgument {
            reason: "r̂ and φ̂ must share one slow grid".to_string(),
        });
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(NlsError::InvalidArgument {
            reason: format!("ε must be positive and finite, got {eps}"),
        });
    }
    let fast = state.psi.grid();
    let slow = r_hat.grid();
    let scaled = fast.length() * eps;
    if (scaled - slow.length()).abs() > 1e-9 * slow.length() {
        return Err(NlsError::InvalidArgument {
            reason: format!(
                "fast domain of length {} times ε = {eps} does not match the slow domain \
                 of length {}",
                fast.length(),
                slow.length()
            ),
        });
    }
    if slow.points() > fast.points() {
        return Err(NlsError::InvalidArgument {
            reason: format!(
                "slow grid ({} points) is finer than the fast grid ({} points)",
                slow.points(),
                fast.points()
            ),
        });
    }
    carrier_cycles(params.k(), fast.length())?;

    let t = state.t;
    let k = params.k();
    let omega_t = params.omega() * t;
    let phi_fast = phi_hat.interpolate_to(fast.points())?;
    let demodulated: Vec<Complex64> = (0..fast.points())
        .map(|j| {
            let phase = omega_t + k * fast.x(j) + phi_fast.value(j) / eps;
            state.psi.values()[j] * Complex64::cis(-phase)
        })
        .collect();
    let demodulated = ComplexField::from_values(fast, demodulated)?;

    let (low, tail_fraction) = demodulated.restrict_to(slow.points())?;
    if tail_fraction > 1e-2 {
        return Err(NlsError::AliasedExtraction { tail_fraction });
    }

    let amplitude = r_hat.exp_pointwise(1.0);
    let w1 = RealField::from_values(
        slow,
        low.values()
            .iter()
            .zip(amplitude.values())
            .map(|(v, a)| v.re / a - 1.0)
            .collect(),
    )?;
    let w2 = RealField::from_values(
        slow,
        low.values()
            .iter()
            .zip(amplitude.values())
            .map(|(v, a)| v.im / a)
            .collect(),
    )?;
    Ok(DeviationState {
        t_slow: eps * t,
        w1,
        w2,
    })
}

/// Weighted energy ‖e^{r̂}·∂_X W‖²_{L²} + 2ε⁻²·‖e^{2r̂}·W₁‖²_{L²} of a
/// deviation state: the quantity whose growth the validity argument
/// controls. The ε⁻² weight makes an O(ε) amplitude deviation an O(1)
/// contribution, so the energy stays comparable across ε; ‖W₂‖_{L²} is
/// deliberately not included and is tracked separately by callers.
pub fn validity_energy(d: &DeviationState, r_hat: &RealField, eps: f64) -> f64 {
    let weight = r_hat.exp_pointwise(1.0);
    let weight2 = r_hat.exp_pointwise(2.0);
    let w1_x = d.w1.derivative(1).expect("order 1 is supported");
    let w2_x = d.w2.derivative(1).expect("order 1 is supported");
    let grad = weight.mul_pointwise(&w1_x).l2_norm().powi(2)
        + weight.mul_pointwise(&w2_x).l2_norm().powi(2);
    let amp = weight2.mul_pointwise(&d.w1).l2_norm().powi(2);
    grad + 2.0 * amp / (eps * eps)
}
