//! Run artifacts: a lossless JSON report with a content hash, a flat CSV of
//! the convergence tables, and gnuplot-ready series files, all laid out in
//! one directory per run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classify::RunClassification;
use crate::convergence::ConvergenceTable;
use crate::criteria::CriterionResult;
use crate::error::HarnessError;
use crate::stability::StabilityReport;
use crate::wme_run::WmeRunSummary;

/// Everything one run produced. Serializes losslessly; the hash covers a
/// canonical form with wall-clock fields zeroed, so identical configurations
/// hash identically no matter how fast the machine was.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    /// Verbatim text of the configuration that produced the run.
    pub config_snapshot: String,
    pub content_hash: String,
    pub tables: Vec<ConvergenceTable>,
    pub wme: Option<WmeRunSummary>,
    pub stability: Option<StabilityReport>,
    pub classifications: Vec<RunClassification>,
    pub criteria: Vec<CriterionResult>,
}

impl RunReport {
    pub fn new(config_snapshot: impl Into<String>) -> Self {
        Self {
            tool: "whitham-lab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_snapshot: config_snapshot.into(),
            content_hash: String::new(),
            tables: Vec::new(),
            wme: None,
            stability: None,
            classifications: Vec::new(),
            criteria: Vec::new(),
        }
    }

    /// The report with every timing zeroed and the hash field emptied — the
    /// form that is hashed and that determinism is judged on.
    pub fn canonical(&self) -> Self {
        let mut c = self.clone();
        c.content_hash.clear();
        for table in &mut c.tables {
            for row in &mut table.rows {
                row.runtime_s = 0.0;
            }
        }
        for criterion in &mut c.criteria {
            criterion.runtime_s = 0.0;
        }
        c
    }

    pub fn canonical_bytes(&self) -> Result<Vec<u8>, HarnessError> {
        Ok(serde_json::to_vec(&self.canonical())?)
    }

    /// Computes and stores the content hash.
    pub fn finalize(&mut self) -> Result<(), HarnessError> {
        self.content_hash = hex(&Sha256::digest(self.canonical_bytes()?));
        Ok(())
    }

    /// Writes the run directory: `report.json`, `config.toml` (the verbatim
    /// snapshot), `table.csv`, gnuplot `.dat` series, and a `manifest.json`
    /// listing every emitted file with its digest. Returns the paths.
    pub fn write_dir(&self, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        fs::create_dir_all(dir)?;
        let mut files: Vec<(String, Vec<u8>)> = Vec::new();

        files.push((
            "report.json".into(),
            serde_json::to_vec_pretty(self)?,
        ));
        if !self.config_snapshot.is_empty() {
            files.push(("config.toml".into(), self.config_snapshot.clone().into_bytes()));
        }
        if !self.tables.is_empty() {
            files.push(("table.csv".into(), self.tables_csv().into_bytes()));
        }
        for (i, table) in self.tables.iter().enumerate() {
            files.push((format!("convergence-{i}.dat"), table_dat(table).into_bytes()));
            for row in &table.rows {
                if !row.samples.is_empty() {
                    files.push((
                        format!("deviation-{i}-eps{}.dat", row.eps),
                        deviation_dat(row).into_bytes(),
                    ));
                }
            }
        }
        if let Some(wme) = &self.wme {
            files.push(("energy.dat".into(), energy_dat(wme).into_bytes()));
        }
        if let Some(st) = &self.stability {
            files.push(("stability.dat".into(), stability_dat(st).into_bytes()));
        }

        let mut manifest = Vec::with_capacity(files.len());
        for (name, bytes) in &files {
            manifest.push(serde_json::json!({
                "name": name,
                "bytes": bytes.len(),
                "sha256": hex(&Sha256::digest(bytes)),
            }));
        }
        let manifest = serde_json::json!({
            "tool": self.tool,
            "version": self.version,
            "content_hash": self.content_hash,
            "files": manifest,
        });
        files.push(("manifest.json".into(), serde_json::to_vec_pretty(&manifest)?));

        let mut written = Vec::with_capacity(files.len());
        for (name, bytes) in files {
            let path = dir.join(name);
            fs::write(&path, bytes)?;
            written.push(path);
        }
        Ok(written)
    }

    fn tables_csv(&self) -> String {
        let mut out = String::from(
            "table,eps,n,t0,err_h1,err_linf,res_h1,res_mismatch_rel,\
             mass_drift_rel,n_fast,dt_fast,runtime_s,error\n",
        );
        for (i, table) in self.tables.iter().enumerate() {
            for row in &table.rows {
                let _ = writeln!(
                    out,
                    "{i},{:e},{},{:e},{},{},{},{},{},{},{},{:e},{}",
                    row.eps,
                    row.n,
                    row.t0,
                    csv_opt(row.err_h1),
                    csv_opt(row.err_linf),
                    csv_opt(row.res_h1),
                    csv_opt(row.res_mismatch_rel),
                    csv_opt(row.mass_drift_rel),
                    row.n_fast.map(|v| v.to_string()).unwrap_or_default(),
                    csv_opt(row.dt_fast),
                    row.runtime_s,
                    csv_escape(row.error.as_deref().unwrap_or("")),
                );
            }
        }
        out
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn csv_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn dat_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_else(|| "nan".into())
}

fn table_dat(table: &ConvergenceTable) -> String {
    let mut out = String::from("# eps  err_h1  err_linf  res_h1\n");
    for row in &table.rows {
        let _ = writeln!(
            out,
            "{:e}  {}  {}  {}",
            row.eps,
            dat_opt(row.err_h1),
            dat_opt(row.err_linf),
            dat_opt(row.res_h1),
        );
    }
    out
}

fn deviation_dat(row: &crate::convergence::ConvergenceRow) -> String {
    let mut out = String::from("# T  w_h1  w_sup  validity_energy\n");
    for s in &row.samples {
        let _ = writeln!(
            out,
            "{:e}  {:e}  {:e}  {:e}",
            s.t_slow, s.w_h1, s.w_sup, s.validity
        );
    }
    out
}

fn energy_dat(wme: &WmeRunSummary) -> String {
    let mut out = String::from("# t  energy\n");
    for (t, e) in &wme.series {
        let _ = writeln!(out, "{t:e}  {e:e}");
    }
    out
}

fn stability_dat(st: &StabilityReport) -> String {
    let mut out = String::from("# t  conserved  w2  w2_meanfree  grad_ratio\n");
    for (i, t) in st.times.iter().enumerate() {
        let _ = writeln!(
            out,
            "{t:e}  {:e}  {:e}  {:e}  {:e}",
            st.conserved[i], st.w2_norms[i], st.w2_meanfree[i], st.grad_ratio[i]
        );
    }
    out
}
