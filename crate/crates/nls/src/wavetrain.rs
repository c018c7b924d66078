use num_complex::Complex64;
use whitham_field::{ComplexField, RealField};

use crate::{NlsError, WaveParams, GAMMA};

/// Fourier symbol of the flow linearized about the wavetrain: in each mode
/// ξ the pair (Ŵ₁, Ŵ₂) of real/imaginary-part coefficients obeys
/// d/dt (Ŵ₁, Ŵ₂) = 𝕄(ξ)·(Ŵ₁, Ŵ₂) with
///
///   𝕄(ξ) = [ −2ikξ      ξ²    ]
///          [ −ξ² + 2γ  −2ikξ  ].
pub fn wavetrain_symbol(params: &WaveParams, xi: f64) -> [[Complex64; 2]; 2] {
    let drift = Complex64::new(0.0, -2.0 * params.k() * xi);
    [
        [drift, Complex64::new(xi * xi, 0.0)],
        [Complex64::new(-xi * xi + 2.0 * GAMMA, 0.0), drift],
    ]
}

/// Eigenvalues −2ikξ ± i·|ξ|√(ξ² − 2γ) of the symbol 𝕄(ξ).
///
/// For γ = −1 the radicand ξ² + 2 is positive, so both eigenvalues are
/// purely imaginary for every ξ ≠ 0 (spectral stability of the wavetrain);
/// at ξ = 0 they collide at 0 and the symbol degenerates to a nontrivial
/// Jordan cell.
pub fn wavetrain_eigenvalues(params: &WaveParams, xi: f64) -> [Complex64; 2] {
    let mu = xi.abs() * (xi * xi - 2.0 * GAMMA).sqrt();
    let drift = -2.0 * params.k() * xi;
    [
        Complex64::new(0.0, drift + mu),
        Complex64::new(0.0, drift - mu),
    ]
}

/// The quadratic invariant ‖∂_xW‖²_{L²} − 2γ‖Re W‖²_{L²} of the linearized
/// flow (both terms are nonnegative for γ = −1).
pub fn conserved_quadratic(w: &ComplexField) -> f64 {
    let grad = w.derivative(1).expect("order 1 is supported").l2_norm();
    let real = w.re().l2_norm();
    grad * grad - 2.0 * GAMMA * real * real
}

/// Trajectory of the linearized-about-the-wavetrain flow, sampled at
/// uniformly spaced instants, with the quadratic invariant alongside.
#[derive(Debug, Clone)]
pub struct WavetrainTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<ComplexField>,
    pub conserved: Vec<f64>,
}

impl WavetrainTrajectory {
    /// Largest relative excursion of the quadratic invariant from its
    /// initial value.
    pub fn conserved_drift(&self) -> f64 {
        let c0 = self.conserved[0];
        let worst = self
            .conserved
            .iter()
            .map(|c| (c - c0).abs())
            .fold(0.0, f64::max);
        worst / c0.abs().max(f64::MIN_POSITIVE)
    }
}

/// Solves ∂_tW₁ = −∂²_xW₂ − 2k∂_xW₁, ∂_tW₂ = ∂²_xW₁ − 2k∂_xW₂ + 2γW₁ — the
/// deviation flow linearized about the wavetrain — by exact exponentiation
/// of the symbol 𝕄(ξ) mode by mode.
///
/// With μ(ξ) = |ξ|√(ξ² − 2γ) the propagator of one mode is
/// e^{−2ikξt}·(cos(μt)·𝕀 + sin(μt)/μ·ℕ) where ℕ is the off-diagonal part of
/// 𝕄; at ξ = 0, where μ = 0, sin(μt)/μ degenerates to t and the Jordan cell
/// produces the secular solution W₁(t) = W₁(0), W₂(t) = W₂(0) + 2γ·W₁(0)·t.
/// Every sample is propagated directly from the initial spectrum, so no
/// time-stepping error accumulates; `dt` only selects the sample instants.
pub fn wavetrain_linearized(
    w0: &ComplexField,
    params: &WaveParams,
    t_final: f64,
    dt: f64,
) -> Result<WavetrainTrajectory, NlsError> {
    if !(t_final.is_finite() && t_final > 0.0 && dt.is_finite() && dt > 0.0) {
        return Err(NlsError::InvalidArgument {
            reason: format!("need positive finite times, got t_final = {t_final}, dt = {dt}"),
        });
    }
    let steps = t_final / dt;
    if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
        return Err(NlsError::InvalidArgument {
            reason: format!("dt = {dt} must divide t_final = {t_final} into whole steps"),
        });
    }
    let steps = steps.round() as usize;

    let grid = w0.grid();
    let s1_0 = w0.re().spectrum();
    let s2_0 = w0.im().spectrum();
    let k = params.k();

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut conserved = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = i as f64 * dt;
        let mut s1 = vec![Complex64::new(0.0, 0.0); grid.points()];
        let mut s2 = s1.clone();
        for m in 0..grid.points() {
            let xi = grid.wavenumber(m);
            let mu = xi.abs() * (xi * xi - 2.0 * GAMMA).sqrt();
            let (cos, sinc) = if mu > 0.0 {
                ((mu * t).cos(), (mu * t).sin() / mu)
            } else {
                (1.0, t)
            };
            let phase = Complex64::cis(-2.0 * k * xi * t);
            let (a, b) = (s1_0[m], s2_0[m]);
            s1[m] = phase * (cos * a + xi * xi * sinc * b);
            s2[m] = phase * ((-xi * xi + 2.0 * GAMMA) * sinc * a + cos * b);
        }
        let w1 = RealField::from_spectrum(grid, &s1);
        let w2 = RealField::from_spectrum(grid, &s2);
        let w = ComplexField::from_re_im(&w1, &w2);
        times.push(t);
        conserved.push(conserved_quadratic(&w));
        states.push(w);
    }
    Ok(WavetrainTrajectory {
        times,
        states,
        conserved,
    })
}
