//! Ranking metrics: ROC-AUC and PR-AUC.

use crate::error::{Error, Result};

fn validate(y: &[u8], scores: &[f64]) -> Result<(usize, usize)> {
    if y.len() != scores.len() {
        return Err(Error::Shape(format!(
            "labels have {} rows, scores have {}",
            y.len(),
            scores.len()
        )));
    }
    if let Some(s) = scores.iter().find(|s| !s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "scores must be finite, found {s}"
        )));
    }
    let mut n_pos = 0usize;
    for &v in y {
        if v > 1 {
            return Err(Error::InvalidArgument(format!(
                "labels must be 0 or 1, found {v}"
            )));
        }
        n_pos += v as usize;
    }
    let n_neg = y.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::UndefinedMetric(
            "ROC/PR need both classes present".into(),
        ));
    }
    Ok((n_pos, n_neg))
}

/// Area under the ROC curve via the rank-statistic form.
///
/// Equal to P(score(+) > score(-)) + 0.5 * P(score(+) = score(-)) over all
/// positive/negative pairs; ties receive midranks, so tied blocks contribute
/// exactly half. O(n log n). Errors on single-class labels.
pub fn roc_auc(y: &[u8], scores: &[f64]) -> Result<f64> {
    let (n_pos, n_neg) = validate(y, scores)?;
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap());

    // Sum of positive midranks (1-based).
    let mut rank_sum = 0.0f64;
    let mut i = 0usize;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        // Rows i..j share the midrank of positions i+1 ..= j.
        let midrank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            if y[idx] == 1 {
                rank_sum += midrank;
            }
        }
        i = j;
    }
    let u = rank_sum - (n_pos * (n_pos + 1)) as f64 / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

/// Area under the precision-recall curve as average precision:
/// `sum (R_k - R_{k-1}) * P_k` over distinct-score blocks in descending
/// score order. A block of tied scores enters as one step, so permuting
/// rows never changes the value. All-equal scores yield the base rate.
pub fn pr_auc(y: &[u8], scores: &[f64]) -> Result<f64> {
    let (n_pos, _) = validate(y, scores)?;
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());

    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut prev_recall = 0.0f64;
    let mut ap = 0.0f64;
    let mut i = 0usize;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        for &idx in &order[i..j] {
            if y[idx] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        let recall = tp as f64 / n_pos as f64;
        let precision = tp as f64 / (tp + fp) as f64;
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    Ok(ap)
}
