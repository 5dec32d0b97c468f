//! Python bindings for the fairness metrics and the reweighting math.
//!
//! The module exposes the numeric core — ranking metrics, calibration
//! curves, disparity gaps, and the candidate weight schedules — plus the
//! census-style data generator, so the same quantities the Rust pipeline
//! reports can be recomputed and cross-checked from Python. Model training
//! and the correction sweeps stay on the Rust side; drive those through the
//! `fairdream` CLI and feed the emitted CSV/JSON into Python instead.
//!
//! Labels are 0/1 integers, scores are floats in [0, 1], and every function
//! raises `ValueError` with the core library's message when the input is
//! malformed (mismatched lengths, single-class labels where a ranking
//! metric needs both, and so on).

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fairdream::dataset::synth;
use fairdream::error::Error;
use fairdream::{audit, fairdream as reweight, gridsearch, metrics};

/// Map a core error onto `ValueError`, keeping the message.
fn to_py(err: Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// ROC-AUC of `scores` against binary `labels`.
///
/// Ties in the scores are averaged, so the result is the expected
/// probability that a random positive outranks a random negative.
#[pyfunction]
fn roc_auc(labels: Vec<u8>, scores: Vec<f64>) -> PyResult<f64> {
    metrics::roc_auc(&labels, &scores).map_err(to_py)
}

/// Area under the precision–recall curve.
#[pyfunction]
fn pr_auc(labels: Vec<u8>, scores: Vec<f64>) -> PyResult<f64> {
    metrics::pr_auc(&labels, &scores).map_err(to_py)
}

/// The score threshold maximizing F1, returned as `(threshold, f1)`.
///
/// Candidates are the observed scores; ties on F1 keep the highest
/// threshold, matching how the pipeline picks its operating point.
#[pyfunction]
fn best_f1_threshold(labels: Vec<u8>, scores: Vec<f64>) -> PyResult<(f64, f64)> {
    metrics::best_f1_threshold(&labels, &scores).map_err(to_py)
}

/// Equal-width calibration curve as `(bin_centers, positive_rates, counts)`.
///
/// Empty bins are dropped, so the three lists are the populated bins only.
#[pyfunction]
#[pyo3(signature = (labels, scores, n_bins = 10))]
fn calibration_curve(
    labels: Vec<u8>,
    scores: Vec<f64>,
    n_bins: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<usize>)> {
    let curve = metrics::calibration_curve(&labels, &scores, n_bins).map_err(to_py)?;
    Ok((curve.centers, curve.rates, curve.counts))
}

/// Area between two groups' calibration curves over their shared range.
///
/// Raises `ValueError` when either side has fewer than two populated bins
/// or the score ranges do not overlap — the gap is undefined there.
#[pyfunction]
#[pyo3(signature = (labels_a, scores_a, labels_b, scores_b, n_bins = 10))]
fn calibration_gap_area(
    labels_a: Vec<u8>,
    scores_a: Vec<f64>,
    labels_b: Vec<u8>,
    scores_b: Vec<f64>,
    n_bins: usize,
) -> PyResult<f64> {
    let a = metrics::calibration_curve(&labels_a, &scores_a, n_bins).map_err(to_py)?;
    let b = metrics::calibration_curve(&labels_b, &scores_b, n_bins).map_err(to_py)?;
    metrics::calibration_gap_area(&a, &b).map_err(to_py)
}

/// Distance of each value from the best (largest) value in the list.
///
/// This is how per-group rates become disparity gaps: the best-off group
/// gets 0 and everyone else gets their shortfall.
#[pyfunction]
fn gaps_to_max(values: Vec<f64>) -> Vec<f64> {
    reweight::gaps_to_max(&values)
}

/// Per-group training weights for correction candidate `n`.
///
/// Each group's raw weight is `max(gap, floor) · share · exp(n · gap)`;
/// the schedule is rescaled so its largest weight is exactly 1. Larger `n`
/// presses harder on the lagging groups (`n` starts at 1).
#[pyfunction]
fn candidate_weights(n: usize, gaps: Vec<f64>, sizes: Vec<usize>) -> PyResult<Vec<f64>> {
    let schedule = reweight::candidate_weights(n, &gaps, &sizes).map_err(to_py)?;
    Ok(schedule.groups.into_iter().map(|g| g.weight).collect())
}

/// Size-weighted fairness score `1 − Σ share_k · gap_k`, clamped to [0, 1].
#[pyfunction]
fn fair_score_global(gaps: Vec<f64>, sizes: Vec<usize>) -> PyResult<f64> {
    reweight::fair_score_global(&gaps, &sizes).map_err(to_py)
}

/// Blend of accuracy and fairness: `alpha·stat + (1 − alpha)·fair`.
///
/// The default `alpha` weights fairness twice as heavily as raw accuracy,
/// matching the selection rule the correction sweep uses.
#[pyfunction]
#[pyo3(signature = (stat_score, fair_score, alpha = reweight::DEFAULT_STAT_WEIGHT))]
fn trade_off_score(stat_score: f64, fair_score: f64, alpha: f64) -> PyResult<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(PyValueError::new_err(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(alpha * stat_score + (1.0 - alpha) * fair_score)
}

/// Write a synthetic census-style CSV and return the number of data rows.
///
/// The draw is fully determined by `(rows, seed)`, so the same arguments
/// always produce a byte-identical file.
#[pyfunction]
#[pyo3(signature = (path, rows = 48_842, seed = 42))]
fn generate_census(path: PathBuf, rows: usize, seed: u64) -> PyResult<usize> {
    let table = synth::generate(rows, seed).map_err(to_py)?;
    synth::write_csv(&table, &path).map_err(to_py)?;
    Ok(table.rows())
}

#[pymodule]
fn fairdream_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(roc_auc, m)?)?;
    m.add_function(wrap_pyfunction!(pr_auc, m)?)?;
    m.add_function(wrap_pyfunction!(best_f1_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(calibration_curve, m)?)?;
    m.add_function(wrap_pyfunction!(calibration_gap_area, m)?)?;
    m.add_function(wrap_pyfunction!(gaps_to_max, m)?)?;
    m.add_function(wrap_pyfunction!(candidate_weights, m)?)?;
    m.add_function(wrap_pyfunction!(fair_score_global, m)?)?;
    m.add_function(wrap_pyfunction!(trade_off_score, m)?)?;
    m.add_function(wrap_pyfunction!(generate_census, m)?)?;

    m.add("WEIGHT_GAP_FLOOR", reweight::WEIGHT_GAP_FLOOR)?;
    m.add("DEFAULT_CANDIDATES", reweight::DEFAULT_CANDIDATES)?;
    m.add("DEFAULT_STAT_WEIGHT", reweight::DEFAULT_STAT_WEIGHT)?;
    m.add("DEFAULT_RATIO_THRESHOLD", audit::DEFAULT_RATIO_THRESHOLD)?;
    m.add("DEFAULT_MIN_GROUP_SIZE", audit::DEFAULT_MIN_GROUP_SIZE)?;
    m.add("DEFAULT_GRID_SIZE", gridsearch::DEFAULT_GRID_SIZE)?;
    m.add("DEFAULT_LAMBDA_BOUND", gridsearch::DEFAULT_LAMBDA_BOUND)?;
    m.add("DEFAULT_ETA", gridsearch::DEFAULT_ETA)?;
    m.add("POSITIVE_LABEL", synth::POSITIVE_LABEL)?;
    m.add("NEGATIVE_LABEL", synth::NEGATIVE_LABEL)?;
    Ok(())
}
