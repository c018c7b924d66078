//! Hyperbolicity classification of the modulation system: the phase-gradient
//! discriminant Θ_T + Θ_X² (equal to γA² on an exact wavetrain) has real
//! characteristics exactly where it is negative.

use std::fmt;

use serde::{Deserialize, Serialize};
use whitham_field::{Grid1D, RealField};
use whitham_hierarchy::{build_hierarchy, g_field, lift_phase, Hierarchy};
use whitham_nls::WaveParams;

use crate::convergence::ConvergenceConfig;
use crate::error::HarnessError;
use crate::profile::initial_pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Hyperbolic,
    Elliptic,
    Mixed,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Hyperbolic => "hyperbolic",
            Self::Elliptic => "elliptic",
            Self::Mixed => "mixed",
        })
    }
}

/// Pointwise sign field of the discriminant plus its summary.
#[derive(Debug, Clone)]
pub struct HyperbolicityField {
    /// Θ_T + Θ_X² at every gridpoint.
    pub discriminant: RealField,
    pub summary: Classification,
    pub min: f64,
    pub max: f64,
    /// Fraction of gridpoints with a strictly negative discriminant.
    pub negative_fraction: f64,
}

/// Classifies a single snapshot from its phase gradients.
pub fn classify_hyperbolicity(
    theta_t: &RealField,
    theta_x: &RealField,
) -> Result<HyperbolicityField, HarnessError> {
    if !theta_t.grid().same_as(&theta_x.grid()) {
        return Err(HarnessError::InvalidArgument {
            reason: "Θ_T and Θ_X must share a grid".into(),
        });
    }
    let discriminant = &theta_x.mul_pointwise(theta_x) + theta_t;
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut negative = 0usize;
    for &v in discriminant.values() {
        min = min.min(v);
        max = max.max(v);
        if v < 0.0 {
            negative += 1;
        }
    }
    let summary = if max < 0.0 {
        Classification::Hyperbolic
    } else if min > 0.0 {
        Classification::Elliptic
    } else {
        Classification::Mixed
    };
    Ok(HyperbolicityField {
        summary,
        min,
        max,
        negative_fraction: negative as f64 / discriminant.grid().points() as f64,
        discriminant,
    })
}

/// Classification of a whole modulated run at a fixed ε, snapshot by
/// snapshot, wired from the assembled profiles: Θ_X = k + ∂_Xφ̂ and
/// Θ_T = ω + ∂_Tφ̂, with ∂_Tφ̂ the same field the phase lift integrates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunClassification {
    pub eps: f64,
    pub per_snapshot: Vec<Classification>,
    pub summary: Classification,
    /// True when every snapshot classifies like the first one.
    pub sign_preserved: bool,
    /// Closest approach of the discriminant to zero from below over the
    /// whole run (negative on a uniformly hyperbolic run).
    pub max_discriminant: f64,
}

/// Classifies every snapshot of an already-built hierarchy.
pub fn classify_modulation_run(
    h: &Hierarchy,
    eps: f64,
    snapshots: usize,
) -> Result<RunClassification, HarnessError> {
    let steps = h.steps();
    if snapshots == 0 || steps % snapshots != 0 || (steps / snapshots) % 2 != 0 {
        return Err(HarnessError::InvalidArgument {
            reason: format!(
                "snapshot count must split the {steps} steps into even strides, got {snapshots}"
            ),
        });
    }
    let stride = steps / snapshots;
    let lift = lift_phase(h, eps, stride)?;
    let omega = WaveParams::new(h.k())?.omega();
    let k = h.k();

    let mut per_snapshot = Vec::with_capacity(snapshots + 1);
    let mut max_disc = f64::NEG_INFINITY;
    for (j, sample) in lift.samples().iter().enumerate() {
        let (r_hat, u_hat) = h.assemble(eps, j * stride);
        let theta_t = g_field(&r_hat, &u_hat, k, eps).map(|v| v + omega);
        let theta_x = sample.phi.derivative(1)?.map(|v| v + k);
        let field = classify_hyperbolicity(&theta_t, &theta_x)?;
        max_disc = max_disc.max(field.max);
        per_snapshot.push(field.summary);
    }

    let first = per_snapshot[0];
    let sign_preserved = per_snapshot.iter().all(|&c| c == first);
    let summary = if per_snapshot.iter().all(|&c| c == Classification::Hyperbolic) {
        Classification::Hyperbolic
    } else if per_snapshot.iter().all(|&c| c == Classification::Elliptic) {
        Classification::Elliptic
    } else {
        Classification::Mixed
    };
    Ok(RunClassification {
        eps,
        per_snapshot,
        summary,
        sign_preserved,
        max_discriminant: max_disc,
    })
}

/// Builds the hierarchy described by a convergence config and classifies the
/// run at each ε of its ladder.
pub fn classify_from_config(
    cfg: &ConvergenceConfig,
) -> Result<Vec<RunClassification>, HarnessError> {
    let grid = Grid1D::new(cfg.n_slow, cfg.l_slow)?;
    let (r0, u0) = initial_pair(&cfg.r0, &cfg.u0, grid)?;
    let h = build_hierarchy(&r0, &u0, cfg.k, cfg.t0, cfg.dt_slow, cfg.n)?;
    cfg.eps
        .iter()
        .map(|&eps| classify_modulation_run(&h, eps, cfg.snapshots))
        .collect()
}
