//! Example families, rate fits, randomized suites and report emission.

pub mod generators;
pub mod report;
pub mod suites;

use serde::Serialize;

use crate::error::{Result, WulffError};

pub use generators::{lp_cone, lp_cone_auto, rhombus_zigzag, LpCone, RhombusZigzag};
pub use report::{run_report, ReportConfig};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    pub pairs: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Fit `y ≈ e^intercept x^slope`. Needs at least 4 positive pairs whose
/// parameters span a decade.
pub fn fit_rate(pairs: &[(f64, f64)]) -> Result<RateFit> {
    if pairs.len() < 4 {
        return Err(WulffError::InsufficientData(format!(
            "need at least 4 pairs, got {}",
            pairs.len()
        )));
    }
    if pairs
        .iter()
        .any(|(x, y)| !(*x > 0.0) || !(*y > 0.0) || !x.is_finite() || !y.is_finite())
    {
        return Err(WulffError::InsufficientData(
            "rate fits need finite positive pairs".into(),
        ));
    }
    let xmin = pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let xmax = pairs.iter().map(|p| p.0).fold(0.0, f64::max);
    if xmax < 10.0 * xmin * (1.0 - 1e-12) {
        return Err(WulffError::InsufficientData(format!(
            "parameters span less than a decade ({xmin:.3e} to {xmax:.3e})"
        )));
    }
    let n = pairs.len() as f64;
    let lx: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r2 = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(RateFit {
        pairs: pairs.to_vec(),
        slope,
        intercept,
        r2,
    })
}

/// `steps` log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0) || !(hi > lo) || steps < 2 {
        return Err(WulffError::InvalidConfig(format!(
            "log range needs 0 < lo < hi and at least 2 steps (got {lo}, {hi}, {steps})"
        )));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..steps)
        .map(|i| (a + (b - a) * i as f64 / (steps - 1) as f64).exp())
        .collect())
}

/// True if every consecutive ratio is below one (strictly decreasing).
pub fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}
