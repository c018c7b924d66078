//! Named analytic families for the slow initial profiles r₀ and u₀, plus a
//! file-based escape hatch. Profiles are realized on the slow grid; the
//! velocity profile is forced zero-mean at construction (a nonzero mean
//! belongs to the carrier wavenumber, not to the modulation).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use whitham_field::{Grid1D, RealField};

use crate::error::HarnessError;

/// Mean sizes below this (relative to the profile amplitude) are FFT
/// roundoff, not a user mistake; they are left untouched so that analytic
/// zero-mean families realize bit-exactly.
const MEAN_ROUNDOFF: f64 = 1e-13;

/// Profiles whose periodic truncation leaves more than this at the domain
/// edge get a logged warning (spectral accuracy degrades to the edge jump).
const EDGE_BUDGET: f64 = 1e-12;

/// One named initial-profile family, serializable so that configs and
/// report snapshots carry the exact experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileSpec {
    /// a·e^{−z²} with z = (x − L/2)/w.
    GaussianBump { amplitude: f64, width: f64 },
    /// Peak-normalized odd derivative of a Gaussian, a·√(2e)·z·e^{−z²}:
    /// exactly zero-mean and edge-decaying, the default velocity family.
    GaussianDipole { amplitude: f64, width: f64 },
    /// a·sech(z).
    SechBump { amplitude: f64, width: f64 },
    /// a·sin(2π·mode·x/L).
    Sine { amplitude: f64, mode: u32 },
    /// Uniform samples read from a text file: one value per line, `#`
    /// comments and blank lines ignored; the sample count must equal the
    /// grid size.
    CustomCsv { path: PathBuf },
}

impl ProfileSpec {
    /// Evaluates the family on the given grid.
    pub fn realize(&self, grid: Grid1D) -> Result<RealField, HarnessError> {
        self.validate()?;
        let c = 0.5 * grid.length();
        match self {
            Self::GaussianBump { amplitude, width } => Ok(RealField::from_fn(grid, |x| {
                let z = (x - c) / width;
                amplitude * (-z * z).exp()
            })),
            Self::GaussianDipole { amplitude, width } => {
                let peak = (2.0 * std::f64::consts::E).sqrt();
                Ok(RealField::from_fn(grid, |x| {
                    let z = (x - c) / width;
                    amplitude * peak * z * (-z * z).exp()
                }))
            }
            Self::SechBump { amplitude, width } => Ok(RealField::from_fn(grid, |x| {
                let z = (x - c) / width;
                amplitude / z.cosh()
            })),
            Self::Sine { amplitude, mode } => {
                let kappa = f64::from(*mode) * std::f64::consts::TAU / grid.length();
                Ok(RealField::from_fn(grid, |x| amplitude * (kappa * x).sin()))
            }
            Self::CustomCsv { path } => read_samples(path, grid),
        }
    }

    fn validate(&self) -> Result<(), HarnessError> {
        let bad = |reason: String| Err(HarnessError::InvalidArgument { reason });
        match *self {
            Self::GaussianBump { amplitude, width }
            | Self::GaussianDipole { amplitude, width }
            | Self::SechBump { amplitude, width } => {
                if !amplitude.is_finite() {
                    return bad(format!("profile amplitude must be finite, got {amplitude}"));
                }
                if !(width.is_finite() && width > 0.0) {
                    return bad(format!("profile width must be positive, got {width}"));
                }
            }
            Self::Sine { amplitude, mode } => {
                if !amplitude.is_finite() {
                    return bad(format!("profile amplitude must be finite, got {amplitude}"));
                }
                if mode == 0 {
                    return bad("sine profile needs mode ≥ 1 (mode 0 is a constant)".into());
                }
            }
            Self::CustomCsv { .. } => {}
        }
        Ok(())
    }
}

fn read_samples(path: &PathBuf, grid: Grid1D) -> Result<RealField, HarnessError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::ProfileData {
        path: shown.clone(),
        reason: e.to_string(),
    })?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|e| HarnessError::ProfileData {
            path: shown.clone(),
            reason: format!("line {}: {e}", lineno + 1),
        })?;
        values.push(v);
    }
    if values.len() != grid.points() {
        return Err(HarnessError::ProfileData {
            path: shown,
            reason: format!(
                "expected {} samples to match the slow grid, found {}",
                grid.points(),
                values.len()
            ),
        });
    }
    Ok(RealField::from_values(grid, values)?)
}

/// Realizes the (r₀, u₀) pair for a run: u₀ is made zero-mean (with a logged
/// warning when the family itself was not), and profiles whose periodic
/// truncation is visible at the domain edge are reported rather than
/// rejected.
pub fn initial_pair(
    r_spec: &ProfileSpec,
    u_spec: &ProfileSpec,
    grid: Grid1D,
) -> Result<(RealField, RealField), HarnessError> {
    let r0 = r_spec.realize(grid)?;
    let u0 = u_spec.realize(grid)?;

    for (name, f) in [("r0", &r0), ("u0", &u0)] {
        let edge = f.value(0).abs();
        if edge > EDGE_BUDGET.max(1e-15 * f.sup_norm()) {
            log::warn!(
                "{name} is {edge:.3e} at the domain edge; the periodic truncation \
                 will limit spectral accuracy to that level"
            );
        }
    }

    let mean = u0.mean();
    let u0 = if mean.abs() > MEAN_ROUNDOFF * u0.sup_norm().max(1.0) {
        log::warn!(
            "u0 has mean {mean:.3e}; subtracting it (a mean velocity belongs to the \
             carrier wavenumber k, and the phase lift needs a periodic antiderivative)"
        );
        u0.subtract_mean()
    } else {
        u0
    };
    Ok((r0, u0))
}
