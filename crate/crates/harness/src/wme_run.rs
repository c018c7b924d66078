//! Single base-flow run: integrate the modulation system on the configured
//! profiles and record the energy history — the quickest smoke test of the
//! slow side of the pipeline.

use serde::{Deserialize, Serialize};
use whitham_field::Grid1D;
use whitham_wme::{cfl_max_dt, wme_energy, wme_integrate};

use crate::convergence::ConvergenceConfig;
use crate::error::HarnessError;
use crate::profile::initial_pair;

/// Energy history of one base integration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WmeRunSummary {
    pub k: f64,
    /// Step actually used: the configured slow step, capped at half the
    /// advective stability limit of the initial data.
    pub dt: f64,
    pub steps: usize,
    pub energy_initial: f64,
    pub energy_drift_rel: f64,
    /// Drift of the conserved velocity mean.
    pub mean_u_drift: f64,
    /// Downsampled (t, energy) history, at most 256 entries.
    pub series: Vec<(f64, f64)>,
}

/// Integrates the base system over the config window and measures the
/// energy drift.
pub fn run_wme(cfg: &ConvergenceConfig) -> Result<WmeRunSummary, HarnessError> {
    let grid = Grid1D::new(cfg.n_slow, cfg.l_slow)?;
    let (r0, u0) = initial_pair(&cfg.r0, &cfg.u0, grid)?;
    let dt = cfg.dt_slow.min(0.5 * cfl_max_dt(&r0, &u0, cfg.k));
    let traj = wme_integrate(&r0, &u0, cfg.k, cfg.t0, dt)?;

    let e0 = wme_energy(&r0, &u0);
    let scale = e0.abs().max(f64::MIN_POSITIVE);
    let mut drift = 0.0f64;
    let mut series = Vec::new();
    let keep_every = (traj.len() / 256).max(1);
    for (i, s) in traj.states().iter().enumerate() {
        let e = wme_energy(&s.r, &s.u);
        drift = drift.max((e - e0).abs() / scale);
        if i % keep_every == 0 || i == traj.len() - 1 {
            series.push((i as f64 * traj.dt(), e));
        }
    }
    let mean_u_drift = (traj.state(traj.len() - 1).u.mean() - u0.mean()).abs();

    Ok(WmeRunSummary {
        k: cfg.k,
        dt: traj.dt(),
        steps: traj.len() - 1,
        energy_initial: e0,
        energy_drift_rel: drift,
        mean_u_drift,
        series,
    })
}
