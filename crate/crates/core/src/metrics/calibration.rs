//! Reliability curves and the area between two of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binned reliability curve: empirical positive rate as a function of
/// mean predicted score, over equal-width score bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationCurve {
    /// Mean predicted score per non-empty bin, strictly increasing.
    pub centers: Vec<f64>,
    /// Empirical positive rate per bin, each in [0, 1].
    pub rates: Vec<f64>,
    /// Row count per bin.
    pub counts: Vec<usize>,
    /// Number of bins requested (before dropping empty ones).
    pub n_bins: usize,
}

impl CalibrationCurve {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Covered score range `(first center, last center)`.
    pub fn range(&self) -> (f64, f64) {
        (self.centers[0], *self.centers.last().unwrap())
    }

    /// Piecewise-linear interpolation of the empirical rate at `x`, which
    /// must lie within `range()`.
    fn interpolate(&self, x: f64) -> f64 {
        let n = self.centers.len();
        if x <= self.centers[0] {
            return self.rates[0];
        }
        if x >= self.centers[n - 1] {
            return self.rates[n - 1];
        }
        let i = self.centers.partition_point(|&c| c <= x);
        let (x0, x1) = (self.centers[i - 1], self.centers[i]);
        let (y0, y1) = (self.rates[i - 1], self.rates[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// Bin predicted scores into `n_bins` equal-width bins on [0, 1] and return
/// the reliability curve. Empty bins are dropped; the remaining bin centers
/// (mean predicted score) are strictly increasing by construction.
pub fn calibration_curve(y: &[u8], scores: &[f64], n_bins: usize) -> Result<CalibrationCurve> {
    if y.len() != scores.len() {
        return Err(Error::Shape(format!(
            "labels have {} rows, scores have {}",
            y.len(),
            scores.len()
        )));
    }
    if n_bins < 2 {
        return Err(Error::InvalidArgument(format!(
            "calibration needs at least 2 bins, got {n_bins}"
        )));
    }
    if y.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot build a calibration curve from no rows".into(),
        ));
    }
    for &s in scores {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidArgument(format!(
                "calibration scores must be probabilities in [0, 1], found {s}"
            )));
        }
    }

    let mut sum_score = vec![0.0f64; n_bins];
    let mut sum_pos = vec![0usize; n_bins];
    let mut counts = vec![0usize; n_bins];
    for (&yi, &si) in y.iter().zip(scores) {
        // Bin k covers [k/n, (k+1)/n); score 1.0 lands in the last bin.
        let mut k = (si * n_bins as f64).floor() as usize;
        if k >= n_bins {
            k = n_bins - 1;
        }
        sum_score[k] += si;
        sum_pos[k] += yi as usize;
        counts[k] += 1;
    }

    let mut curve = CalibrationCurve {
        centers: Vec::new(),
        rates: Vec::new(),
        counts: Vec::new(),
        n_bins,
    };
    for k in 0..n_bins {
        if counts[k] == 0 {
            continue;
        }
        curve.centers.push(sum_score[k] / counts[k] as f64);
        curve.rates.push(sum_pos[k] as f64 / counts[k] as f64);
        curve.counts.push(counts[k]);
    }
    Ok(curve)
}

/// Area between two reliability curves over the intersection of their score
/// ranges: the trapezoid integral of `|rate_a(x) - rate_b(x)|`, with both
/// curves piecewise-linear between bin centers and knots merged from both.
///
/// Each curve needs at least two points, and the ranges must overlap.
pub fn calibration_gap_area(a: &CalibrationCurve, b: &CalibrationCurve) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "calibration gap needs curves with at least 2 points (got {} and {})",
            a.len(),
            b.len()
        )));
    }
    let (a_lo, a_hi) = a.range();
    let (b_lo, b_hi) = b.range();
    let lo = a_lo.max(b_lo);
    let hi = a_hi.min(b_hi);
    if lo > hi {
        return Err(Error::UndefinedMetric(format!(
            "calibration curves do not overlap: [{a_lo}, {a_hi}] vs [{b_lo}, {b_hi}]"
        )));
    }
    if lo == hi {
        return Ok(0.0);
    }

    let mut knots = vec![lo, hi];
    knots.extend(a.centers.iter().copied().filter(|&x| x > lo && x < hi));
    knots.extend(b.centers.iter().copied().filter(|&x| x > lo && x < hi));
    knots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    knots.dedup();

    let mut area = 0.0f64;
    let mut prev_x = knots[0];
    let mut prev_d = (a.interpolate(prev_x) - b.interpolate(prev_x)).abs();
    for &x in &knots[1..] {
        let d = (a.interpolate(x) - b.interpolate(x)).abs();
        area += 0.5 * (prev_d + d) * (x - prev_x);
        prev_x = x;
        prev_d = d;
    }
    Ok(area)
}
