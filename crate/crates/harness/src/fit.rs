//! Least-squares power-law fitting on log–log data, the instrument behind
//! every measured convergence order.

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// Result of an ordinary least-squares line fit through (log x, log y).
///
/// `max_residual` is the largest |log y − (intercept + slope·log x)| over
/// the points — with the short ladders used here (≤ 20 points) it is also
/// the empirical 95th-percentile residual, and it is what the tables report
/// as the fit quality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

/// Fits y ≈ e^intercept · x^slope by ordinary least squares on
/// (log x, log y). Requires at least three strictly positive, finite points
/// with non-identical abscissas.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Result<SlopeFit, HarnessError> {
    let bad = |reason: String| Err(HarnessError::InvalidArgument { reason });
    if xs.len() != ys.len() {
        return bad(format!(
            "mismatched fit data: {} abscissas vs {} ordinates",
            xs.len(),
            ys.len()
        ));
    }
    if xs.len() < 3 {
        return bad(format!(
            "a slope fit needs at least 3 points, got {}",
            xs.len()
        ));
    }
    for (&x, &y) in xs.iter().zip(ys) {
        if !(x.is_finite() && x > 0.0 && y.is_finite() && y > 0.0) {
            return bad(format!(
                "log–log fit needs strictly positive finite data, got ({x}, {y})"
            ));
        }
    }

    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return bad("all abscissas are equal; the slope is undetermined".into());
    }

    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    Ok(SlopeFit {
        slope,
        intercept,
        max_residual,
    })
}
