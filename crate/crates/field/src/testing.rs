//! Deterministic smooth pseudo-random fields for oracle tests.
//!
//! Only compiled with the `testing` feature; downstream crates enable it in
//! their dev-dependencies. Fields are built from a seeded ChaCha8 stream so
//! every test run sees identical data.

use crate::grid::Grid1D;
use crate::real::RealField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smooth random field: a trigonometric sum over the lowest `modes`
/// frequencies with uniformly random amplitudes and phases, coefficient of
/// mode `m` damped by `(1+m)^{-3}`, rescaled to the requested sup-norm.
pub fn smooth_field(grid: Grid1D, seed: u64, amplitude: f64, modes: usize) -> RealField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes = modes.max(1).min(grid.points() / 4);
    let base = 2.0 * std::f64::consts::PI / grid.length();
    let coeffs: Vec<(f64, f64, f64)> = (1..=modes)
        .map(|m| {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let phase: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let damp = (1.0 + m as f64).powi(-3);
            (a * damp, m as f64 * base, phase)
        })
        .collect();
    let raw = RealField::from_fn(grid, |x| {
        coeffs.iter().map(|(a, k, p)| a * (k * x + p).cos()).sum()
    });
    let sup = raw.sup_norm();
    if sup > 0.0 {
        raw.scale(amplitude / sup)
    } else {
        raw
    }
}

/// Smooth random field with zero grid mean.
pub fn smooth_zero_mean_field(grid: Grid1D, seed: u64, amplitude: f64, modes: usize) -> RealField {
    smooth_field(grid, seed, amplitude, modes).subtract_mean()
}
