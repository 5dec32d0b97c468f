//! F1-optimal decision thresholds.

use crate::error::{Error, Result};

/// Find the score threshold maximizing F1, scanning every distinct score as
/// a candidate (prediction is 1 iff `score >= threshold`).
///
/// Returns `(threshold, f1)`. Ties on F1 break toward the larger threshold
/// (fewer positive predictions). Errors when there are no actual positives,
/// since F1 is undefined for every threshold.
pub fn best_f1_threshold(y: &[u8], scores: &[f64]) -> Result<(f64, f64)> {
    if y.len() != scores.len() {
        return Err(Error::Shape(format!(
            "labels have {} rows, scores have {}",
            y.len(),
            scores.len()
        )));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::InvalidArgument("scores must be finite".into()));
    }
    let n_pos: usize = y.iter().map(|&v| v as usize).sum();
    if n_pos == 0 {
        return Err(Error::UndefinedMetric(
            "F1 is undefined without actual positives".into(),
        ));
    }

    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());

    // Walk thresholds from the largest score down. At the end of each
    // tied block, everything at or above the block's score is predicted 1.
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut best_t = f64::NAN;
    let mut best_f1 = f64::MIN;
    let mut i = 0usize;
    while i < order.len() {
        let t = scores[order[i]];
        let mut j = i;
        while j < order.len() && scores[order[j]] == t {
            if y[order[j]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            j += 1;
        }
        let fn_ = n_pos - tp;
        let f1 = 2.0 * tp as f64 / (2 * tp + fp + fn_) as f64;
        // Strict improvement keeps the earliest (largest) threshold on ties.
        if f1 > best_f1 {
            best_f1 = f1;
            best_t = t;
        }
        i = j;
    }
    Ok((best_t, best_f1))
}
