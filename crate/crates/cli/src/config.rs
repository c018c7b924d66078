//! Experiment configuration: one strict TOML file per experiment, with
//! command-line flags overriding file keys. Unknown keys are always fatal,
//! and every invariant is checked before any compute starts.

use std::f64::consts::TAU;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use whitham_harness::{ConvergenceConfig, ProfileSpec, StabilityConfig};

/// The only admissible cubic coefficient: the laboratory covers the
/// defocusing regime, where the modulation system is hyperbolic.
pub const DEFOCUSING_GAMMA: f64 = -1.0;

/// A rejected configuration, with the violated invariant spelled out.
/// Distinct from run-time failures: these exit with code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Everything an experiment needs. Missing keys take the documented
/// defaults (the flagship ladder), so an empty file is a valid experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LabConfig {
    /// Sign of the cubic coefficient. Not actually configurable: anything
    /// other than −1 is rejected, the key exists so the rejection can say
    /// why.
    pub gamma: f64,
    /// Carrier wavenumber. Must close on the fast domain: k·L_slow/(2πε)
    /// has to be an integer for every configured ε.
    pub k: f64,
    /// Hierarchy depth (number of correction levels).
    pub n: usize,
    /// ε ladder, strictly decreasing; geometric when three or more rungs.
    pub eps: Vec<f64>,
    /// Slow-time horizon T₀.
    pub t0: f64,
    /// Slow domain length.
    pub l_slow: f64,
    /// Slow grid points (power of two).
    pub n_slow: usize,
    /// Hard cap on the derived fast-grid size.
    pub n_fast_max: usize,
    /// Slow integrator step.
    pub dt_slow: f64,
    /// Fast step as a fraction of ε².
    pub dt_fast_factor: f64,
    /// Measurement instants per run (must split the slow march evenly).
    pub snapshots: usize,
    /// Slack subtracted from the theoretical slopes when stamping verdicts.
    pub slope_tolerance: f64,
    /// Output directory; when absent, runs/<command>-<content-hash prefix>.
    pub out: Option<PathBuf>,
    /// Initial log-amplitude profile r₀.
    pub r0: ProfileSpec,
    /// Initial velocity profile u₀ (re-centered to zero mean if needed).
    pub u0: ProfileSpec,
    /// Knobs for the `stability` subcommand.
    pub stability: StabilityConfig,
}

impl Default for LabConfig {
    fn default() -> Self {
        let base = ConvergenceConfig::default();
        Self {
            gamma: DEFOCUSING_GAMMA,
            k: base.k,
            n: base.n,
            eps: base.eps,
            t0: base.t0,
            l_slow: base.l_slow,
            n_slow: base.n_slow,
            n_fast_max: base.n_fast_max,
            dt_slow: base.dt_slow,
            dt_fast_factor: base.dt_fast_factor,
            snapshots: base.snapshots,
            slope_tolerance: base.slope_tolerance,
            out: None,
            r0: base.r0,
            u0: base.u0,
            stability: StabilityConfig::default(),
        }
    }
}

/// Command-line overrides for file keys.
#[derive(Debug, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub eps: Option<Vec<f64>>,
    pub t0: Option<f64>,
    pub out: Option<PathBuf>,
}

impl LabConfig {
    /// Reads the file (or starts from defaults), applies flag overrides,
    /// and validates every invariant.
    pub fn resolve(path: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = match path {
            None => Self::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| ConfigError(format!("cannot read {}: {e}", p.display())))?;
                toml::from_str(&text)
                    .map_err(|e| ConfigError(format!("{}: {e}", p.display())))?
            }
        };
        if let Some(n) = overrides.n {
            cfg.n = n;
        }
        if let Some(eps) = &overrides.eps {
            cfg.eps = eps.clone();
        }
        if let Some(t0) = overrides.t0 {
            cfg.t0 = t0;
        }
        if let Some(out) = &overrides.out {
            cfg.out = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Maps the experiment keys onto a ladder configuration; the subcommand
    /// decides whether the wave solve runs.
    pub fn to_ladder(&self, measure_deviation: bool) -> ConvergenceConfig {
        ConvergenceConfig {
            r0: self.r0.clone(),
            u0: self.u0.clone(),
            k: self.k,
            n: self.n,
            eps: self.eps.clone(),
            t0: self.t0,
            l_slow: self.l_slow,
            n_slow: self.n_slow,
            n_fast_max: self.n_fast_max,
            dt_slow: self.dt_slow,
            dt_fast_factor: self.dt_fast_factor,
            snapshots: self.snapshots,
            measure_deviation,
            slope_tolerance: self.slope_tolerance,
        }
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.gamma != DEFOCUSING_GAMMA {
            return Err(ConfigError(format!(
                "γ = {} requested, but the laboratory is pinned to the defocusing \
                 regime γ = −1: for γ > 0 the modulation system turns elliptic and \
                 the wavetrain validity theory does not apply",
                self.gamma
            )));
        }
        // The carrier must close on the fast domain at every rung; rather
        // than silently snapping k, reject and name the nearest value that
        // would work.
        for &eps in &self.eps {
            if !(eps.is_finite() && eps > 0.0) {
                break; // the ladder check below reports this with context
            }
            let cycles = self.k * self.l_slow / (TAU * eps);
            let nearest = cycles.round();
            if (cycles - nearest).abs() > 1e-9 * cycles.abs().max(1.0) {
                let spacing = TAU * eps / self.l_slow;
                let candidate = if nearest == 0.0 { 1.0 } else { nearest };
                return Err(ConfigError(format!(
                    "k = {} is not on the carrier lattice at ε = {eps}: \
                     k·L_slow/(2πε) = {cycles:.6} must be an integer so the carrier \
                     closes on the fast domain; the nearest admissible value is \
                     k = {} (lattice spacing {spacing:.6})",
                    self.k,
                    candidate * spacing,
                )));
            }
        }
        // Ladder shape, horizon, grid and step invariants are owned by the
        // harness; surface its message verbatim.
        self.to_ladder(true)
            .validate()
            .map_err(|e| ConfigError(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip_is_identity() {
        let cfg = LabConfig {
            out: Some("runs/demo".into()),
            eps: vec![0.2, 0.1],
            ..LabConfig::default()
        };
        let text = toml::to_string_pretty(&cfg).unwrap();
        let back: LabConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn empty_file_echoes_documented_defaults() {
        let minimal: LabConfig = toml::from_str("").unwrap();
        assert_eq!(minimal, LabConfig::default());
        assert_eq!(minimal.gamma, DEFOCUSING_GAMMA);
        assert_eq!(minimal.eps, vec![0.2, 0.1, 0.05, 0.025]);
    }

    #[test]
    fn focusing_sign_is_rejected_with_scope_message() {
        let err = LabConfig {
            gamma: 1.0,
            ..LabConfig::default()
        }
        .validate()
        .unwrap_err();
        assert!(err.0.contains("defocusing"), "{err}");
    }

    #[test]
    fn off_lattice_carrier_names_the_nearest_valid_wavenumber() {
        let err = LabConfig {
            k: 0.33,
            eps: vec![0.2],
            ..LabConfig::default()
        }
        .validate()
        .unwrap_err();
        assert!(err.0.contains("0.325"), "{err}");
    }

    #[test]
    fn unknown_keys_are_fatal() {
        let parsed: Result<LabConfig, _> = toml::from_str("wavelength = 3.0");
        let msg = parsed.unwrap_err().to_string();
        assert!(msg.contains("wavelength"), "{msg}");
    }

    #[test]
    fn overrides_replace_file_keys() {
        let overrides = Overrides {
            n: Some(2),
            eps: Some(vec![0.4, 0.2]),
            t0: Some(0.1),
            out: Some("elsewhere".into()),
        };
        let cfg = LabConfig::resolve(None, &overrides).unwrap();
        assert_eq!(cfg.n, 2);
        assert_eq!(cfg.eps, vec![0.4, 0.2]);
        assert_eq!(cfg.t0, 0.1);
        assert_eq!(cfg.out.as_deref(), Some(Path::new("elsewhere")));
    }
}
