//! The acceptance gates: each criterion runs a pinned standard experiment,
//! measures the stated observable, and stamps a pass/fail flag with the
//! measured numbers spelled out. Reports produced by the lab carry these
//! stamps so a run directory is self-judging.

use std::f64::consts::PI;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use whitham_field::{Grid1D, RealField};
use whitham_hierarchy::build_hierarchy;
use whitham_jets::reference::{first_level_forcing, first_level_residual};
use whitham_nls::{modulated_initial_data, WaveParams};
use whitham_wme::{cfl_max_dt, wme_energy, wme_integrate, GAMMA};

use crate::classify::{classify_hyperbolicity, classify_modulation_run, Classification};
use crate::convergence::{run_convergence, ConvergenceConfig, ConvergenceTable};
use crate::error::HarnessError;
use crate::orders::{rk4_self_order, strang_self_order};
use crate::profile::{initial_pair, ProfileSpec};
use crate::stability::{run_stability_demo, StabilityConfig};

/// One stamped acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub runtime_s: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {} ({}): {} — {} [{:.1} s]",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details,
            self.runtime_s
        )
    }
}

fn gate(
    id: usize,
    name: &str,
    budget_s: Option<f64>,
    body: impl FnOnce() -> Result<(bool, String), HarnessError>,
) -> CriterionResult {
    let started = Instant::now();
    let (mut passed, mut details) = match body() {
        Ok(x) => x,
        Err(e) => (false, format!("aborted: {e}")),
    };
    let runtime_s = started.elapsed().as_secs_f64();
    if let Some(budget) = budget_s {
        if runtime_s > budget {
            passed = false;
            details.push_str(&format!(
                "; runtime {runtime_s:.1} s exceeded the {budget:.0} s budget"
            ));
        }
    }
    CriterionResult {
        id,
        name: name.into(),
        passed,
        details,
        runtime_s,
    }
}

fn bump(amplitude: f64, width: f64) -> ProfileSpec {
    ProfileSpec::GaussianBump { amplitude, width }
}

fn dipole(amplitude: f64, width: f64) -> ProfileSpec {
    ProfileSpec::GaussianDipole { amplitude, width }
}

/// Criterion 1 — exact energy conservation of the modulation system:
/// smooth bump data, N = 1024, T₀ = 0.5, relative drift < 1e-8 within 10 s.
pub fn criterion_energy_conservation() -> CriterionResult {
    gate(1, "modulation energy conservation", Some(10.0), || {
        let grid = Grid1D::new(1024, 16.0 * PI)?;
        let (r0, u0) = initial_pair(&bump(0.25, 1.5), &dipole(0.25, 1.5), grid)?;
        let k = 1.0;
        let dt = 0.5 * cfl_max_dt(&r0, &u0, k);
        let traj = wme_integrate(&r0, &u0, k, 0.5, dt)?;
        let e0 = wme_energy(&r0, &u0);
        let drift = traj
            .states()
            .iter()
            .map(|s| ((wme_energy(&s.r, &s.u) - e0) / e0).abs())
            .fold(0.0, f64::max);
        Ok((
            drift < 1e-8,
            format!(
                "relative energy drift {drift:.3e} over T₀ = 0.5 \
                 ({} steps at dt = {:.3e}, threshold 1e-8)",
                traj.len() - 1,
                traj.dt()
            ),
        ))
    })
}

/// Shared ladder geometry for the residual and validity criteria: bump and
/// dipole profiles small enough that ‖r₀‖, ‖u₀‖ ≤ 0.2 in both the sup and
/// the H¹ reading.
fn ladder_config(n: usize, measure_deviation: bool) -> ConvergenceConfig {
    ConvergenceConfig {
        n,
        measure_deviation,
        ..ConvergenceConfig::default()
    }
}

fn residual_slope(table: &ConvergenceTable, n: usize) -> Result<(bool, String), HarnessError> {
    let threshold = 2.0 * (n as f64 + 1.0) - 0.2;
    if let Some(row) = table.rows.iter().find(|r| r.error.is_some()) {
        return Ok((
            false,
            format!(
                "n = {n}: rung ε = {} failed: {}",
                row.eps,
                row.error.as_deref().unwrap_or("unknown")
            ),
        ));
    }
    let sups: Vec<String> = table
        .rows
        .iter()
        .map(|r| format!("{:.3e}", r.res_h1.unwrap_or(f64::NAN)))
        .collect();
    match &table.residual_fit {
        Some(fit) => Ok((
            fit.slope >= threshold,
            format!(
                "n = {n}: residual sups [{}] fit slope {:.3} (threshold ≥ {threshold})",
                sups.join(", "),
                fit.slope
            ),
        )),
        None => Ok((
            false,
            format!("n = {n}: no residual fit: {}", table.notes.join("; ")),
        )),
    }
}

/// Criterion 2 — residual order: the combined residual sup decays like
/// ε^{2(n+1)} along the ladder; fitted slope ≥ 3.8 at n = 1 and ≥ 5.8 at
/// n = 2, within 2 min.
pub fn criterion_residual_order() -> CriterionResult {
    gate(2, "residual order", Some(120.0), || {
        let t1 = run_convergence(&ladder_config(1, false))?;
        let (ok1, msg1) = residual_slope(&t1, 1)?;
        let t2 = run_convergence(&ladder_config(2, false))?;
        let (ok2, msg2) = residual_slope(&t2, 2)?;
        Ok((ok1 && ok2, format!("{msg1}; {msg2}")))
    })
}

/// Criterion 3 — the validity law: with order-n data the wave field stays
/// ε^{2n}-close to the modulated wavetrain; the fitted slope of
/// sup_{T ≤ T₀}‖W‖_{H¹} must be ≥ 1.8 at n = 1 (the measured slope is
/// reported and may exceed 2, since sharpness of the rate is open), within
/// 10 min at N_fast ≤ 2¹⁵.
pub fn criterion_validity_order() -> CriterionResult {
    gate(3, "validity order", Some(600.0), || {
        let cfg = ladder_config(1, true);
        let table = run_convergence(&cfg)?;
        if let Some(row) = table.rows.iter().find(|r| r.error.is_some()) {
            return Ok((
                false,
                format!(
                    "rung ε = {} failed: {}",
                    row.eps,
                    row.error.as_deref().unwrap_or("unknown")
                ),
            ));
        }
        let errs: Vec<String> = table
            .rows
            .iter()
            .map(|r| format!("{:.3e}", r.err_h1.unwrap_or(f64::NAN)))
            .collect();
        match &table.error_fit {
            Some(fit) => Ok((
                fit.slope >= 1.8,
                format!(
                    "sup_T‖W‖_H¹ = [{}] over ε = {:?}, fit slope {:.3} \
                     (threshold ≥ 1.8; theory guarantees 2n = 2)",
                    errs.join(", "),
                    cfg.eps,
                    fit.slope
                ),
            )),
            None => Ok((false, format!("no error fit: {}", table.notes.join("; ")))),
        }
    })
}

/// Criterion 4 — dual-path residual consistency: the closed-form residuals
/// and the direct equation defects agree to 1e-8 relative in H¹ at every
/// snapshot of the gate run, within 1 min.
pub fn criterion_residual_consistency() -> CriterionResult {
    gate(4, "dual-route residual consistency", Some(60.0), || {
        let cfg = ConvergenceConfig {
            r0: bump(0.25, 1.5),
            u0: dipole(0.25, 1.5),
            n_slow: 1024,
            t0: 0.5,
            eps: vec![0.2],
            measure_deviation: false,
            ..ConvergenceConfig::default()
        };
        let table = run_convergence(&cfg)?;
        let row = &table.rows[0];
        if let Some(e) = &row.error {
            return Ok((false, format!("gate run failed: {e}")));
        }
        let mismatch = row.res_mismatch_rel.unwrap_or(f64::INFINITY);
        Ok((
            mismatch <= 1e-8,
            format!(
                "worst route disagreement {mismatch:.3e} relative in H¹ over \
                 {} snapshots (threshold 1e-8; residual sup {:.3e})",
                cfg.snapshots,
                row.res_h1.unwrap_or(f64::NAN)
            ),
        ))
    })
}

/// Criterion 5 — hand-formula oracle: the machine-extracted level-1 forcing
/// equals (0, ∂³_X r + ∂_X(∂_X r)²) to 1e-10, and the level-2 forcing equals
/// the negated transcribed level-1 residual to 1e-8, pointwise along a run.
pub fn criterion_forcing_oracle() -> CriterionResult {
    gate(5, "hand-formula forcing oracle", None, || {
        let grid = Grid1D::new(128, 16.0 * PI)?;
        let (r0, u0) = initial_pair(&bump(0.2, 2.0), &dipole(0.2, 2.0), grid)?;
        let h = build_hierarchy(&r0, &u0, 1.0, 0.1, 1e-3, 2)?;
        let (mut worst1, mut worst2) = (0.0f64, 0.0f64);
        for i in (0..=h.steps()).step_by(h.steps() / 4) {
            let base = h.base().state(i);
            let lvl1 = h.levels()[0].state(i);

            let (f_r, f_u) = h.levels()[0].forcing(i).clone();
            let (hand_r, hand_u) = first_level_forcing(&base.r)?;
            worst1 = worst1
                .max((&f_r - &hand_r).sup_norm())
                .max((&f_u - &hand_u).sup_norm());

            let (g_r, g_u) = h.levels()[1].forcing(i).clone();
            let (res_r, res_u) = first_level_residual(&base.r, &lvl1.r, &lvl1.u, GAMMA)?;
            worst2 = worst2
                .max((&g_r + &res_r).sup_norm())
                .max((&g_u + &res_u).sup_norm());
        }
        Ok((
            worst1 <= 1e-10 && worst2 <= 1e-8,
            format!(
                "level-1 forcing vs hand formula sup diff {worst1:.3e} \
                 (threshold 1e-10); level-2 vs transcribed residual {worst2:.3e} \
                 (threshold 1e-8)"
            ),
        ))
    })
}

/// Criterion 6 — wavetrain exactness: from unmodulated data the extracted
/// deviation stays below 1e-8 in H¹ at every snapshot (solver plus
/// extraction round trip at the roundoff floor).
pub fn criterion_wavetrain_exactness() -> CriterionResult {
    gate(6, "wavetrain exactness", None, || {
        let cfg = ConvergenceConfig {
            r0: bump(0.0, 1.0),
            u0: dipole(0.0, 1.0),
            eps: vec![0.1],
            t0: 0.5,
            ..ConvergenceConfig::default()
        };
        let table = run_convergence(&cfg)?;
        let row = &table.rows[0];
        if let Some(e) = &row.error {
            return Ok((false, format!("wavetrain run failed: {e}")));
        }
        let err = row.err_h1.unwrap_or(f64::INFINITY);
        Ok((
            err < 1e-8 && table.degenerate,
            format!(
                "sup_T‖W‖_H¹ = {err:.3e} over T ≤ {} (threshold 1e-8; \
                 table flagged degenerate: {})",
                cfg.t0, table.degenerate
            ),
        ))
    })
}

/// Criterion 7 — stability structure of the linearized wavetrain flow: the
/// quadratic invariant drifts < 1e-11 over t = 100, the zero-mode Jordan
/// cell grows ‖W₂‖ at 2|mean W₁(0)|·√L within 2%, and every sampled symbol
/// eigenvalue off ξ = 0 is purely imaginary to 1e-12.
pub fn criterion_stability_structure() -> CriterionResult {
    gate(7, "linearized stability structure", None, || {
        let report = run_stability_demo(&StabilityConfig::default())?;
        let stamp = stability_criteria(&report);
        Ok((stamp.passed, stamp.details))
    })
}

/// Stamps the stability-structure criterion on an already-computed report
/// (the thresholds are configuration-independent structural facts).
pub fn stability_criteria(report: &crate::stability::StabilityReport) -> CriterionResult {
    let drift_ok = report.conserved_drift_rel < 1e-11;
    let slope_ok = report.slope_rel_err <= 0.02;
    let eig_ok = report.max_abs_re_eigenvalue < 1e-12;
    CriterionResult {
        id: 7,
        name: "linearized stability structure".into(),
        passed: drift_ok && slope_ok && eig_ok,
        details: format!(
            "invariant drift {:.3e} (< 1e-11); ‖W₂‖ slope {:.6} vs analytic \
             {:.6}, off by {:.3e} (≤ 2%); max |Re λ| {:.3e} over {} sampled \
             ξ ≠ 0 (< 1e-12); mean-free growth ratio {:.3}",
            report.conserved_drift_rel,
            report.measured_slope,
            report.analytic_slope,
            report.slope_rel_err,
            report.max_abs_re_eigenvalue,
            report.sampled_modes,
            report.meanfree_ratio
        ),
        runtime_s: 0.0,
    }
}

/// Stamps the energy-conservation criterion on a finished modulation run.
pub fn wme_energy_criterion(summary: &crate::wme_run::WmeRunSummary) -> CriterionResult {
    CriterionResult {
        id: 1,
        name: "modulation energy conservation".into(),
        passed: summary.energy_drift_rel < 1e-8,
        details: format!(
            "relative energy drift {:.3e} over {} steps at dt = {:.3e} (threshold 1e-8)",
            summary.energy_drift_rel, summary.steps, summary.dt
        ),
        runtime_s: 0.0,
    }
}

/// Stamps the hyperbolicity criterion on a set of classified runs: every run
/// must classify hyperbolic at every snapshot with the sign preserved.
pub fn classification_criteria(runs: &[crate::classify::RunClassification]) -> CriterionResult {
    let passed = !runs.is_empty()
        && runs
            .iter()
            .all(|r| r.summary == Classification::Hyperbolic && r.sign_preserved);
    let details = runs
        .iter()
        .map(|r| {
            format!(
                "ε = {}: {} (sign preserved: {}, max discriminant {:.3e})",
                r.eps, r.summary, r.sign_preserved, r.max_discriminant
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    CriterionResult {
        id: 8,
        name: "hyperbolicity classification".into(),
        passed,
        details: if details.is_empty() {
            "no runs classified".into()
        } else {
            details
        },
        runtime_s: 0.0,
    }
}

/// Criterion 8 — hyperbolicity: the wavetrain discriminant is γA² = −1 < 0,
/// and a validated modulated run classifies hyperbolic at every snapshot
/// with the sign preserved over [0, T₀].
pub fn criterion_hyperbolicity() -> CriterionResult {
    gate(8, "hyperbolicity classification", None, || {
        let grid = Grid1D::new(64, 16.0 * PI)?;
        let params = WaveParams::new(1.0)?;
        let theta_t = RealField::constant(grid, params.omega());
        let theta_x = RealField::constant(grid, params.k());
        let wavetrain = classify_hyperbolicity(&theta_t, &theta_x)?;

        let cfg = ladder_config(1, false);
        let grid = Grid1D::new(cfg.n_slow, cfg.l_slow)?;
        let (r0, u0) = initial_pair(&cfg.r0, &cfg.u0, grid)?;
        let h = build_hierarchy(&r0, &u0, cfg.k, cfg.t0, cfg.dt_slow, cfg.n)?;
        let run = classify_modulation_run(&h, 0.1, cfg.snapshots)?;

        let ok = wavetrain.summary == Classification::Hyperbolic
            && run.summary == Classification::Hyperbolic
            && run.sign_preserved;
        Ok((
            ok,
            format!(
                "wavetrain discriminant γA² = {:.3} → {}; modulated run at \
                 ε = {}: {} at all {} snapshots, sign preserved: {}, \
                 max discriminant {:.3}",
                wavetrain.max,
                wavetrain.summary,
                run.eps,
                run.summary,
                run.per_snapshot.len(),
                run.sign_preserved,
                run.max_discriminant
            ),
        ))
    })
}

/// Criterion 9 — self-convergence under step halving: the modulation
/// integrator observes order ≥ 3.9 and the split-step wave solver ≥ 1.9.
pub fn criterion_self_convergence() -> CriterionResult {
    gate(9, "integrator self-convergence", None, || {
        let grid = Grid1D::new(128, 16.0 * PI)?;
        let (r0, u0) = initial_pair(&bump(0.2, 2.0), &dipole(0.2, 2.0), grid)?;
        let rk4 = rk4_self_order(&r0, &u0, 1.0, 0.2, 0.01)?;

        let slow = Grid1D::new(128, 16.0 * PI)?;
        let (rb, ub) = initial_pair(&bump(0.25, 1.5), &dipole(0.25, 1.5), slow)?;
        let phi0 = ub.antiderivative_zero_mean();
        let initial = modulated_initial_data(&rb, &phi0, &WaveParams::new(1.0)?, 0.2, 1024)?;
        let strang = strang_self_order(&initial, 0.5, 2e-3)?;

        Ok((
            rk4.order >= 3.9 && strang.order >= 1.9,
            format!(
                "modulation RK4 order {:.3} from errors ({:.3e}, {:.3e}) \
                 (threshold ≥ 3.9); split-step order {:.3} from ({:.3e}, {:.3e}) \
                 (threshold ≥ 1.9)",
                rk4.order,
                rk4.coarse_error,
                rk4.fine_error,
                strang.order,
                strang.coarse_error,
                strang.fine_error
            ),
        ))
    })
}

/// Runs all nine acceptance criteria in order.
pub fn run_acceptance() -> Vec<CriterionResult> {
    let results = vec![
        criterion_energy_conservation(),
        criterion_residual_order(),
        criterion_validity_order(),
        criterion_residual_consistency(),
        criterion_forcing_oracle(),
        criterion_wavetrain_exactness(),
        criterion_stability_structure(),
        criterion_hyperbolicity(),
        criterion_self_convergence(),
    ];
    for r in &results {
        log::info!("{r}");
    }
    results
}

/// Stamps the criteria that a single convergence run can decide: slope
/// thresholds when the ladder is long enough to fit, dual-route consistency
/// on every rung, and wavetrain exactness when the run is degenerate.
pub fn table_criteria(cfg: &ConvergenceConfig, table: &ConvergenceTable) -> Vec<CriterionResult> {
    let mut stamped = Vec::new();

    if table.degenerate {
        let worst = table
            .rows
            .iter()
            .filter_map(|r| r.err_h1)
            .fold(0.0, f64::max);
        stamped.push(CriterionResult {
            id: 6,
            name: "wavetrain exactness".into(),
            passed: worst < 1e-8,
            details: format!("degenerate run: sup_T‖W‖_H¹ = {worst:.3e} (threshold 1e-8)"),
            runtime_s: 0.0,
        });
        return stamped;
    }

    if cfg.eps.len() >= 3 {
        let threshold = 2.0 * (cfg.n as f64 + 1.0) - cfg.slope_tolerance;
        stamped.push(CriterionResult {
            id: 2,
            name: "residual order".into(),
            passed: table
                .residual_fit
                .as_ref()
                .is_some_and(|f| f.slope >= threshold),
            details: match &table.residual_fit {
                Some(f) => format!("slope {:.3}, threshold ≥ {threshold}", f.slope),
                None => format!("no fit: {}", table.notes.join("; ")),
            },
            runtime_s: 0.0,
        });
        if cfg.measure_deviation {
            let threshold = 2.0 * cfg.n as f64 - cfg.slope_tolerance;
            stamped.push(CriterionResult {
                id: 3,
                name: "validity order".into(),
                passed: table
                    .error_fit
                    .as_ref()
                    .is_some_and(|f| f.slope >= threshold),
                details: match &table.error_fit {
                    Some(f) => format!("slope {:.3}, threshold ≥ {threshold}", f.slope),
                    None => format!("no fit: {}", table.notes.join("; ")),
                },
                runtime_s: 0.0,
            });
        }
    }

    // A rung is route-consistent when the relative disagreement clears 1e-8,
    // or — for runs whose residuals are themselves tiny — when the absolute
    // disagreement sits at the phase-lift defect floor, where "relative"
    // divides one roundoff-scale number by another.
    let worst_mismatch = table
        .rows
        .iter()
        .filter_map(|r| r.res_mismatch_rel)
        .fold(0.0, f64::max);
    let worst_absolute = table
        .rows
        .iter()
        .filter_map(|r| Some(r.res_mismatch_rel? * r.res_h1?))
        .fold(0.0, f64::max);
    let rows_consistent = table.rows.iter().all(|r| {
        match (r.res_mismatch_rel, r.res_h1) {
            (Some(rel), Some(res)) => rel <= 1e-8 || rel * res <= 1e-11,
            _ => false,
        }
    });
    stamped.push(CriterionResult {
        id: 4,
        name: "dual-route residual consistency".into(),
        passed: table.rows.iter().all(|r| r.error.is_none()) && rows_consistent,
        details: format!(
            "worst route disagreement {worst_mismatch:.3e} relative, \
             {worst_absolute:.3e} absolute (threshold: 1e-8 relative, \
             or 1e-11 absolute at the defect floor)"
        ),
        runtime_s: 0.0,
    });
    stamped
}
