use serde::{Deserialize, Serialize};

use super::ConvergenceRecord;
use crate::error::{Error, Result};

/// Errors at or below this level are treated as rounding noise.
pub const NOISE_FLOOR: f64 = 10.0 * f64::EPSILON;

const MIN_POINTS: usize = 5;

/// Least-squares slope of `log(error)` against `log(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub slope: f64,
    pub window: (usize, usize),
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    pub points: usize,
}

pub fn estimate_rate(
    records: &[ConvergenceRecord],
    window: (usize, usize),
) -> Result<RateEstimate> {
    let (lo, hi) = window;
    let in_window: Vec<&ConvergenceRecord> =
        records.iter().filter(|r| r.n >= lo && r.n <= hi).collect();
    let pts: Vec<(f64, f64)> = in_window
        .iter()
        .filter(|r| r.error > NOISE_FLOOR && r.error.is_finite())
        .map(|r| ((r.n as f64).ln(), r.error.ln()))
        .collect();
    if pts.len() < MIN_POINTS {
        if in_window.len() >= MIN_POINTS {
            return Err(Error::DegenerateInput(format!(
                "errors stagnated below the noise floor ({} of {} usable)",
                pts.len(),
                in_window.len()
            )));
        }
        return Err(Error::InsufficientPoints {
            found: pts.len(),
            needed: MIN_POINTS,
        });
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateInput("all points share the same n".into()));
    }
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - icpt - slope * p.0).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok(RateEstimate {
        slope,
        window,
        residual,
        points: pts.len(),
    })
}

/// `max_n (max_size error / min_size error)` over the `n` shared by all
/// curves; entries below `1e-12` are ignored. Returns `1` when nothing is
/// comparable.
pub fn grid_independence_ratio(curves: &[Vec<ConvergenceRecord>]) -> f64 {
    const IGNORE_BELOW: f64 = 1e-12;
    let Some(first) = curves.first() else {
        return 1.0;
    };
    let mut worst: f64 = 1.0;
    for rec in first {
        let errs: Vec<f64> = curves
            .iter()
            .filter_map(|c| c.iter().find(|r| r.n == rec.n).map(|r| r.error))
            .filter(|&e| e >= IGNORE_BELOW)
            .collect();
        if errs.len() < 2 {
            continue;
        }
        let max = errs.iter().copied().fold(f64::MIN, f64::max);
        let min = errs.iter().copied().fold(f64::MAX, f64::min);
        worst = worst.max(max / min);
    }
    worst
}
