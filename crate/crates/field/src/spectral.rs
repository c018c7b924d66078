//! FFT plumbing shared by real and complex fields.
//!
//! Conventions: coefficients are `c_m = (1/N) Σ_j v_j e^{−2πi jm/N}` and
//! values are `v_j = Σ_m c_m e^{+2πi jm/N}`, so Parseval reads
//! `h·Σ_j |v_j|² = L·Σ_m |c_m|²`.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

type PlanCache = RefCell<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>;

thread_local! {
    static PLANS: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    static CACHE: PlanCache = RefCell::new(HashMap::new());
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry((len, forward))
            .or_insert_with(|| {
                PLANS.with(|p| {
                    let mut p = p.borrow_mut();
                    if forward {
                        p.plan_fft_forward(len)
                    } else {
                        p.plan_fft_inverse(len)
                    }
                })
            })
            .clone()
    })
}

/// In-place unnormalized forward FFT.
pub fn fft_forward(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// In-place unnormalized inverse FFT.
pub fn fft_inverse(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Normalized spectrum of a complex sample vector.
pub fn spectrum_of(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len() as f64;
    let mut buf = values.to_vec();
    fft_forward(&mut buf);
    for c in &mut buf {
        *c /= n;
    }
    buf
}

/// Samples from a normalized spectrum.
pub fn values_of(spectrum: &[Complex64]) -> Vec<Complex64> {
    let mut buf = spectrum.to_vec();
    fft_inverse(&mut buf);
    buf
}

/// Zero-pad a normalized spectrum from `n` to `n_to` bins (`n_to ≥ n`, both
/// powers of two). The Nyquist coefficient is split evenly between the `+n/2`
/// and `−n/2` bins of the target so that the result is the exact spectrum of
/// the trigonometric interpolant.
pub fn pad_spectrum(spec: &[Complex64], n_to: usize) -> Vec<Complex64> {
    let n = spec.len();
    debug_assert!(n_to >= n);
    if n_to == n {
        return spec.to_vec();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n_to];
    let half = n / 2;
    for m in 0..=half {
        if m == half {
            out[half] = 0.5 * spec[half];
            out[n_to - half] = 0.5 * spec[half];
        } else {
            out[m] = spec[m];
            if m > 0 {
                out[n_to - m] = spec[n - m];
            }
        }
    }
    out
}

/// Truncate a normalized spectrum from `n` to `n_to` bins (`n_to ≤ n`). The
/// two half-modes that land on the target's Nyquist bin are folded (summed),
/// the adjoint of the split in [`pad_spectrum`]. Returns the truncated
/// spectrum together with the fraction of squared-coefficient mass that was
/// discarded (0 when the input is band-limited to the target).
pub fn truncate_spectrum(spec: &[Complex64], n_to: usize) -> (Vec<Complex64>, f64) {
    let n = spec.len();
    debug_assert!(n_to <= n);
    if n_to == n {
        return (spec.to_vec(), 0.0);
    }
    let half = n_to / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); n_to];
    for m in 0..half {
        out[m] = spec[m];
        if m > 0 {
            out[n_to - m] = spec[n - m];
        }
    }
    out[half] = spec[half] + spec[n - half];
    let total: f64 = spec.iter().map(|c| c.norm_sqr()).sum();
    let kept: f64 = out.iter().map(|c| c.norm_sqr()).sum();
    let tail = if total > 0.0 {
        ((total - kept) / total).max(0.0)
    } else {
        0.0
    };
    (out, tail)
}

/// Exactly projected (dealiased) product of two same-length sample vectors:
/// both factors are padded to `2N` bins, multiplied pointwise, and truncated
/// back, which computes the Galerkin projection `Π_N(f·g)` without aliasing.
pub fn dealiased_product(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    let n2 = 2 * n;
    let mut pa = pad_spectrum(&spectrum_of(a), n2);
    let pb = pad_spectrum(&spectrum_of(b), n2);
    fft_inverse(&mut pa);
    let mut vb = pb;
    fft_inverse(&mut vb);
    for (x, y) in pa.iter_mut().zip(vb.iter()) {
        *x *= y;
    }
    fft_forward(&mut pa);
    let scale = 1.0 / n2 as f64;
    for c in &mut pa {
        *c *= scale;
    }
    let (trunc, _) = truncate_spectrum(&pa, n);
    values_of(&trunc)
}

/// Apply `(iκ)^order` bin-wise. For odd orders the Nyquist bin is zeroed
/// (its derivative is sign-ambiguous; zeroing keeps real data real and is
/// exact for band-limited input).
pub fn derivative_multipliers(
    spec: &mut [Complex64],
    order: usize,
    wavenumber: impl Fn(usize) -> f64,
) {
    let n = spec.len();
    let nyq = n / 2;
    for (m, c) in spec.iter_mut().enumerate() {
        if order % 2 == 1 && m == nyq {
            *c = Complex64::new(0.0, 0.0);
            continue;
        }
        let ik = Complex64::new(0.0, wavenumber(m));
        *c *= ik.powu(order as u32);
    }
}
