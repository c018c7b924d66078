//! Subcommand implementations: each runs its study through the harness,
//! assembles a report directory, prints the stamped verdicts, and returns
//! them for the exit code.

use std::path::PathBuf;

use whitham_harness::{
    classification_criteria, classify_from_config, run_convergence, run_stability_demo, run_wme,
    stability_criteria, table_criteria, wme_energy_criterion, ConvergenceTable, CriterionResult,
    HarnessError, RunReport,
};

use crate::config::LabConfig;

/// The study a subcommand performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    Wme,
    Hierarchy,
    Nls,
    Converge,
    Stability,
    Classify,
}

impl Study {
    fn name(self) -> &'static str {
        match self {
            Study::Wme => "wme",
            Study::Hierarchy => "hierarchy",
            Study::Nls => "nls",
            Study::Converge => "converge",
            Study::Stability => "stability",
            Study::Classify => "classify",
        }
    }
}

/// Runs the study, writes the run directory, prints the verdict lines, and
/// returns the stamped criteria (empty means nothing to judge — exit 0).
pub fn execute(study: Study, cfg: &LabConfig) -> Result<Vec<CriterionResult>, HarnessError> {
    let snapshot = toml::to_string_pretty(cfg).map_err(|e| HarnessError::InvalidArgument {
        reason: format!("cannot serialize the effective configuration: {e}"),
    })?;
    let mut report = RunReport::new(snapshot);

    match study {
        Study::Wme => {
            let summary = run_wme(&cfg.to_ladder(false))?;
            println!(
                "base modulation run: {} steps at dt = {:.6e} (CFL-capped), \
                 energy {:.6e}, relative drift {:.3e}, mean-u drift {:.3e}",
                summary.steps,
                summary.dt,
                summary.energy_initial,
                summary.energy_drift_rel,
                summary.mean_u_drift
            );
            report.criteria.push(wme_energy_criterion(&summary));
            report.wme = Some(summary);
        }
        Study::Hierarchy => {
            let ladder = cfg.to_ladder(false);
            let table = run_convergence(&ladder)?;
            print_table(&table);
            report.criteria.extend(table_criteria(&ladder, &table));
            report.tables.push(table);
        }
        Study::Nls => {
            // One modulated wave solve at the largest configured ε, with the
            // deviation time series recorded per snapshot.
            let mut ladder = cfg.to_ladder(true);
            ladder.eps.truncate(1);
            let table = run_convergence(&ladder)?;
            print_table(&table);
            report.criteria.extend(table_criteria(&ladder, &table));
            report.tables.push(table);
        }
        Study::Converge => {
            let ladder = cfg.to_ladder(true);
            let table = run_convergence(&ladder)?;
            print_table(&table);
            report.criteria.extend(table_criteria(&ladder, &table));
            report.tables.push(table);
        }
        Study::Stability => {
            let stability = run_stability_demo(&cfg.stability)?;
            println!(
                "linearized wavetrain over t ≤ {}: invariant drift {:.3e}, \
                 ‖W₂‖ slope {:.6} vs analytic {:.6}, max |Re λ| {:.3e}, \
                 mean-free growth ratio {:.3}",
                cfg.stability.t_final,
                stability.conserved_drift_rel,
                stability.measured_slope,
                stability.analytic_slope,
                stability.max_abs_re_eigenvalue,
                stability.meanfree_ratio
            );
            report.criteria.push(stability_criteria(&stability));
            report.stability = Some(stability);
        }
        Study::Classify => {
            let runs = classify_from_config(&cfg.to_ladder(false))?;
            for run in &runs {
                println!(
                    "ε = {}: {} over {} snapshots (sign preserved: {}, \
                     max discriminant {:.3e})",
                    run.eps,
                    run.summary,
                    run.per_snapshot.len(),
                    run.sign_preserved,
                    run.max_discriminant
                );
            }
            report.criteria.push(classification_criteria(&runs));
            report.classifications = runs;
        }
    }

    report.finalize()?;
    let out = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("runs/{}-{}", study.name(), &report.content_hash[..8])));
    let files = report.write_dir(&out)?;

    for criterion in &report.criteria {
        println!("{criterion}");
    }
    println!("wrote {} files to {}", files.len(), out.display());
    Ok(report.criteria.clone())
}

fn print_table(table: &ConvergenceTable) {
    println!("eps        err_h1        res_h1        mismatch_rel  n_fast  status");
    for row in &table.rows {
        println!(
            "{:<9} {:<13} {:<13} {:<13} {:<7} {}",
            row.eps,
            col(row.err_h1),
            col(row.res_h1),
            col(row.res_mismatch_rel),
            row.n_fast.map(|n| n.to_string()).unwrap_or_default(),
            row.error.as_deref().unwrap_or("ok")
        );
    }
    if let Some(fit) = &table.error_fit {
        println!("deviation slope {:.3} (max log-residual {:.2e})", fit.slope, fit.max_residual);
    }
    if let Some(fit) = &table.residual_fit {
        println!("residual slope {:.3} (max log-residual {:.2e})", fit.slope, fit.max_residual);
    }
    for note in &table.notes {
        println!("note: {note}");
    }
}

fn col(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "—".into())
}
