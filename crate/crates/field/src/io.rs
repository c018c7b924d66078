//! Plain-text CSV serialization for fields.
//!
//! Format: one `# grid: points=<N> length=<L>` comment line, a column header,
//! then one row per sample. Floats are written with Rust's shortest
//! round-trip formatting, so read-after-write reproduces the samples exactly.

use crate::complex::ComplexField;
use crate::error::FieldError;
use crate::grid::Grid1D;
use crate::real::RealField;
use num_complex::Complex64;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

fn write_lines(
    path: &Path,
    grid: Grid1D,
    header: &str,
    mut row: impl FnMut(usize) -> String,
) -> Result<(), FieldError> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(
        w,
        "# grid: points={} length={}",
        grid.points(),
        grid.length()
    )?;
    writeln!(w, "{header}")?;
    for j in 0..grid.points() {
        writeln!(w, "{}", row(j))?;
    }
    w.flush()?;
    Ok(())
}

struct Parsed {
    grid: Grid1D,
    columns: usize,
    rows: Vec<Vec<f64>>,
}

fn parse(path: &Path, expect_cols: usize) -> Result<Parsed, FieldError> {
    let err = |line: usize, reason: String| FieldError::MalformedFile {
        path: path.display().to_string(),
        line,
        reason,
    };
    let file = std::fs::File::open(path)?;
    let reader = BufReader::new(file);
    let mut grid: Option<Grid1D> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(meta) = rest.strip_prefix("grid:") {
                let mut points = None;
                let mut length = None;
                for tok in meta.split_whitespace() {
                    if let Some(v) = tok.strip_prefix("points=") {
                        points = v.parse::<usize>().ok();
                    } else if let Some(v) = tok.strip_prefix("length=") {
                        length = v.parse::<f64>().ok();
                    }
                }
                match (points, length) {
                    (Some(p), Some(l)) => grid = Some(Grid1D::new(p, l)?),
                    _ => return Err(err(lineno, "unparsable grid metadata".into())),
                }
            }
            continue;
        }
        if !saw_header && trimmed.chars().next().is_some_and(|c| c.is_alphabetic()) {
            saw_header = true;
            continue;
        }
        let vals: Result<Vec<f64>, _> = trimmed.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let vals = vals.map_err(|e| err(lineno, format!("bad number: {e}")))?;
        if vals.len() != expect_cols {
            return Err(err(
                lineno,
                format!("expected {expect_cols} columns, found {}", vals.len()),
            ));
        }
        rows.push(vals);
    }
    let grid = grid.ok_or_else(|| err(0, "missing '# grid: …' metadata line".into()))?;
    if rows.len() != grid.points() {
        return Err(err(
            0,
            format!("expected {} rows, found {}", grid.points(), rows.len()),
        ));
    }
    // The x column must be the grid lattice.
    for (j, row) in rows.iter().enumerate() {
        let expect = grid.x(j);
        let tol = 1e-9 * grid.length().max(1.0);
        if (row[0] - expect).abs() > tol {
            return Err(err(
                j + 1,
                format!("x = {} is off-lattice (expected {expect})", row[0]),
            ));
        }
    }
    Ok(Parsed {
        grid,
        columns: expect_cols,
        rows,
    })
}

impl RealField {
    /// Write `x,value` rows with a grid-metadata comment line.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<(), FieldError> {
        let vals = self.values();
        let grid = self.grid();
        write_lines(path.as_ref(), grid, "x,value", |j| {
            format!("{},{}", grid.x(j), vals[j])
        })
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self, FieldError> {
        let parsed = parse(path.as_ref(), 2)?;
        debug_assert_eq!(parsed.columns, 2);
        RealField::from_values(parsed.grid, parsed.rows.iter().map(|r| r[1]).collect())
    }
}

impl ComplexField {
    /// Write `x,re,im` rows with a grid-metadata comment line.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<(), FieldError> {
        let vals = self.values().to_vec();
        let grid = self.grid();
        write_lines(path.as_ref(), grid, "x,re,im", |j| {
            format!("{},{},{}", grid.x(j), vals[j].re, vals[j].im)
        })
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self, FieldError> {
        let parsed = parse(path.as_ref(), 3)?;
        ComplexField::from_values(
            parsed.grid,
            parsed
                .rows
                .iter()
                .map(|r| Complex64::new(r[1], r[2]))
                .collect(),
        )
    }
}
