//! The reweighting correction: train candidates under ascending group
//! weights and keep the best accuracy/fairness trade-off.
//!
//! The loop starts from a baseline model's per-group indicators on a
//! held-out audit split. Each group's *gap* is its distance to the
//! best-off group; the gap drives an exponential weight schedule
//!
//! ```text
//! raw_k = max(gap_k, γ) · (|S_k|/N) · exp(n · gap_k)
//! ```
//!
//! rescaled so the largest weight is 1. As the candidate index `n` grows,
//! training errors on disadvantaged groups cost more and more, so the
//! candidate sequence sweeps from "nearly baseline" to "strongly
//! corrected". Every candidate is scored on the audit split — ROC-AUC for
//! accuracy, a size-weighted gap complement for fairness — and the
//! convex combination `α·stat + (1−α)·fair` picks the winner.
//!
//! The gap floor γ keeps the best-off group in the training set: a zero
//! gap would otherwise zero its weight entirely, deleting the group from
//! training and wrecking accuracy exactly where the model was fine.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::FeatureSpec;
use crate::dataset::{encode, DataTable, Encoder, GroupPartition};
use crate::error::{Error, Result};
use crate::learners::{classify, train, LearnerConfig, SampleWeights, TrainedModel};
use crate::metrics::{
    best_f1_threshold, group_report_projected, roc_auc, FairObjective, GroupReport,
};
use crate::pipeline::{encode_mode_for, FittedModel};

/// Gap floor γ: the weight a zero-gap group keeps in the rate factor.
pub const WEIGHT_GAP_FLOOR: f64 = 0.05;
/// Number of candidate models trained when the caller does not say.
pub const DEFAULT_CANDIDATES: usize = 5;
/// Trade-off weight on the statistical score (the rest goes to fairness).
pub const DEFAULT_STAT_WEIGHT: f64 = 1.0 / 3.0;

/// Each group's distance to the best-off group: `max(values) − value_k`.
///
/// A zero gap marks the best-off group itself; everyone else's gap says
/// how far behind they are on the indicator at hand.
pub fn gaps_to_max(values: &[f64]) -> Vec<f64> {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    values.iter().map(|v| max - v).collect()
}

/// Per-group disparity gaps for one objective, from a group report.
///
/// Demographic parity uses the OPR gap-to-max. Equalized odds constrains
/// TPR and FPR symmetrically, so its gap is the mean of the TPR
/// gap-to-max and the FPR gap-to-min (high TPR is good, low FPR is good).
/// A group whose required rate is undefined (no positives or no negatives
/// in the audit split) gets `None` — the flag travels with the group
/// rather than silently pretending a rate exists.
pub fn group_gaps(report: &GroupReport, objective: FairObjective) -> Result<Vec<Option<f64>>> {
    let live: Vec<&crate::metrics::GroupStats> =
        report.groups.iter().filter(|g| g.size > 0).collect();
    if live.len() < 2 {
        return Err(Error::UndefinedMetric(format!(
            "gap computation needs at least two non-empty groups, '{}' has {}",
            report.feature,
            live.len()
        )));
    }
    match objective {
        FairObjective::DemographicParity => {
            let max = live.iter().map(|g| g.opr).fold(f64::NEG_INFINITY, f64::max);
            Ok(report
                .groups
                .iter()
                .map(|g| (g.size > 0).then(|| max - g.opr))
                .collect())
        }
        FairObjective::EqualizedOdds => {
            let tprs: Vec<f64> = live.iter().filter_map(|g| g.tpr).collect();
            let fprs: Vec<f64> = live.iter().filter_map(|g| g.fpr).collect();
            if tprs.len() < 2 || fprs.len() < 2 {
                return Err(Error::UndefinedMetric(format!(
                    "equalized-odds gaps need two groups with defined TPR and FPR on '{}'",
                    report.feature
                )));
            }
            let tpr_max = tprs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let fpr_min = fprs.iter().cloned().fold(f64::INFINITY, f64::min);
            Ok(report
                .groups
                .iter()
                .map(|g| match (g.size > 0, g.tpr, g.fpr) {
                    (true, Some(tpr), Some(fpr)) => {
                        Some(((tpr_max - tpr) + (fpr - fpr_min)) / 2.0)
                    }
                    _ => None,
                })
                .collect())
        }
    }
}

/// One group's slice of a weight schedule, with its derivation laid out.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupWeight {
    pub label: String,
    /// Group size on the split the gaps were measured on.
    pub size: usize,
    /// Disparity gap feeding this group's weight.
    pub gap: f64,
    /// `max(gap, γ) · size/total` — the floored rate factor.
    pub rate_factor: f64,
    /// `rate_factor · exp(n · gap)`, before rescaling.
    pub raw: f64,
    /// Final training weight, rescaled so the schedule's max is 1.
    pub weight: f64,
}

/// The training weights for candidate `n`, one entry per group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightSchedule {
    /// Candidate index; larger `n` presses harder on disadvantaged groups.
    pub n: usize,
    pub groups: Vec<GroupWeight>,
    /// The max raw weight every entry was divided by.
    pub rescale_divisor: f64,
}

impl WeightSchedule {
    /// Expand per-group weights to per-row weights via a group assignment.
    pub fn broadcast(&self, assignment: &[u32]) -> Result<SampleWeights> {
        let weights: Vec<f64> = assignment
            .iter()
            .map(|&g| self.groups[g as usize].weight)
            .collect();
        SampleWeights::new(weights)
    }
}

/// Build the weight schedule for candidate `n` from per-group gaps.
///
/// `sizes` are the group sizes on the split the gaps were measured on —
/// they set each group's share of the rate factor, not the row counts the
/// weights are later broadcast over.
pub fn candidate_weights(n: usize, gaps: &[f64], sizes: &[usize]) -> Result<WeightSchedule> {
    candidate_weights_labeled(
        n,
        gaps,
        sizes,
        &(0..gaps.len()).map(|i| format!("group {i}")).collect::<Vec<_>>(),
    )
}

/// [`candidate_weights`] with caller-supplied group labels.
pub fn candidate_weights_labeled(
    n: usize,
    gaps: &[f64],
    sizes: &[usize],
    labels: &[String],
) -> Result<WeightSchedule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "candidate index n starts at 1".into(),
        ));
    }
    if gaps.len() != sizes.len() || gaps.len() != labels.len() {
        return Err(Error::Shape(format!(
            "gaps ({}), sizes ({}), and labels ({}) must align",
            gaps.len(),
            sizes.len(),
            labels.len()
        )));
    }
    if gaps.is_empty() {
        return Err(Error::InvalidArgument("no groups to weight".into()));
    }
    for &g in gaps {
        if !(0.0..=1.0).contains(&g) {
            return Err(Error::InvalidArgument(format!(
                "gaps must lie in [0, 1], got {g}"
            )));
        }
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(Error::InvalidArgument(
            "every group needs a positive size".into(),
        ));
    }
    let total: usize = sizes.iter().sum();
    let raw: Vec<f64> = gaps
        .iter()
        .zip(sizes)
        .map(|(&gap, &size)| {
            gap.max(WEIGHT_GAP_FLOOR) * (size as f64 / total as f64) * (n as f64 * gap).exp()
        })
        .collect();
    let divisor = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let groups = labels
        .iter()
        .zip(gaps)
        .zip(sizes)
        .zip(&raw)
        .map(|(((label, &gap), &size), &r)| GroupWeight {
            label: label.clone(),
            size,
            gap,
            rate_factor: gap.max(WEIGHT_GAP_FLOOR) * (size as f64 / total as f64),
            raw: r,
            weight: r / divisor,
        })
        .collect();
    Ok(WeightSchedule {
        n,
        groups,
        rescale_divisor: divisor,
    })
}

/// Size-weighted fairness score: `1 − Σ (|S_k|/N)·gap_k`, clamped to [0,1].
///
/// 1 means every group sits at the best-off group's indicator; the score
/// drops as disparity mass grows, weighted by how many people are in each
/// lagging group. The scale matches ROC-AUC, which is what makes the
/// trade-off sum meaningful.
pub fn fair_score_global(gaps: &[f64], sizes: &[usize]) -> Result<f64> {
    if gaps.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "gaps ({}) and sizes ({}) must align",
            gaps.len(),
            sizes.len()
        )));
    }
    if gaps.is_empty() {
        return Err(Error::InvalidArgument("no groups to score".into()));
    }
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return Err(Error::InvalidArgument("all groups are empty".into()));
    }
    let penalty: f64 = gaps
        .iter()
        .zip(sizes)
        .map(|(&gap, &size)| (size as f64 / total as f64) * gap)
        .sum();
    Ok((1.0 - penalty).clamp(0.0, 1.0))
}

/// How one model scored on the audit split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelScores {
    /// F1-maximizing threshold used for the hard predictions.
    pub threshold: f64,
    /// ROC-AUC on the audit split.
    pub stat_score: f64,
    /// [`fair_score_global`] at this model's own threshold.
    pub fair_score: f64,
    /// `α·stat_score + (1−α)·fair_score`.
    pub trade_off_score: f64,
    /// Hard predictions were single-class, or a required rate was
    /// undefined: the fairness score is built on flagged rates and the
    /// model never outranks a non-degenerate one.
    pub degenerate: bool,
    pub report: GroupReport,
}

/// One trained candidate and its scores.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateModel {
    pub schedule: WeightSchedule,
    pub model: TrainedModel,
    pub scores: ModelScores,
}

/// A full correction run: the baseline reference, every candidate, and
/// the selected winner.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FairdreamRun {
    pub feature: String,
    pub objective: FairObjective,
    /// Weight on the statistical score in the trade-off.
    pub alpha: f64,
    /// The uncorrected model's scores — shown for reference, never
    /// eligible for selection.
    pub baseline: ModelScores,
    pub candidates: Vec<CandidateModel>,
    /// Index of the winner in `candidates`.
    pub best: usize,
    /// Encoder shared by every candidate (fitted once on the train split).
    pub encoder: Encoder,
}

impl FairdreamRun {
    pub fn best_candidate(&self) -> &CandidateModel {
        &self.candidates[self.best]
    }

    /// The selected model, packaged for table-in scoring.
    pub fn best_fitted(&self) -> FittedModel {
        FittedModel::from_parts(self.encoder.clone(), self.best_candidate().model.clone())
    }
}

/// Train `n_candidates` reweighted models and select the trade-off winner.
///
/// The baseline's indicators on the audit split fix the gaps; schedules
/// `n = 1..=n_candidates` turn them into training weights; every candidate
/// is thresholded (F1), scored, and compared. Candidate trainings are
/// independent and run in parallel; selection is a deterministic
/// reduction afterward, so reruns pick the same winner.
#[allow(clippy::too_many_arguments)]
pub fn run_fairdream(
    base: &FittedModel,
    train_split: &DataTable,
    audit_split: &DataTable,
    feature: &FeatureSpec,
    objective: FairObjective,
    n_candidates: usize,
    alpha: f64,
    config: &LearnerConfig,
) -> Result<FairdreamRun> {
    if n_candidates == 0 {
        return Err(Error::InvalidArgument(
            "a correction needs at least one candidate".into(),
        ));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let partition = feature.build(train_split)?;
    let audit_assignment = partition.project(audit_split)?;

    // Baseline evaluation fixes the gaps that drive every schedule.
    let base_scores = base.scores(audit_split)?;
    let baseline = evaluate_model(
        &base_scores,
        audit_split.target(),
        &partition,
        &audit_assignment,
        objective,
        alpha,
    )?;
    let audit_sizes: Vec<usize> = baseline.report.groups.iter().map(|g| g.size).collect();
    if let Some(empty) = baseline.report.groups.iter().find(|g| g.size == 0) {
        return Err(Error::InvalidArgument(format!(
            "group '{}' of feature '{}' has no rows in the audit split",
            empty.label, partition.feature
        )));
    }
    let base_gaps = group_gaps(&baseline.report, objective)?;
    // A group with an undefined baseline indicator offers no evidence of
    // disadvantage; it enters the schedule at the gap floor.
    let gaps: Vec<f64> = base_gaps.iter().map(|g| g.unwrap_or(0.0)).collect();
    let labels: Vec<String> = partition.groups.iter().map(|g| g.label.clone()).collect();

    // One encoding serves all candidates; only the weights change.
    let (encoder, train_matrix) = encode(train_split, encode_mode_for(config.family))?;
    let y_audit = audit_split.target();

    let candidates: Vec<CandidateModel> = (1..=n_candidates)
        .into_par_iter()
        .map(|n| {
            let schedule = candidate_weights_labeled(n, &gaps, &audit_sizes, &labels)?;
            let weights = schedule.broadcast(&partition.assignment)?;
            let model = train(&train_matrix, &weights, config)?;
            let fitted = FittedModel::from_parts(encoder.clone(), model);
            let scores = fitted.scores(audit_split)?;
            let evaluated = evaluate_model(
                &scores,
                y_audit,
                &partition,
                &audit_assignment,
                objective,
                alpha,
            )?;
            Ok(CandidateModel {
                schedule,
                model: fitted.model().clone(),
                scores: evaluated,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let best = select_best(&candidates);
    Ok(FairdreamRun {
        feature: partition.feature.clone(),
        objective,
        alpha,
        baseline,
        candidates,
        best,
        encoder,
    })
}

/// Threshold, classify, and score one model's audit-split scores.
fn evaluate_model(
    scores: &[f64],
    y: &[u8],
    partition: &GroupPartition,
    assignment: &[Option<u32>],
    objective: FairObjective,
    alpha: f64,
) -> Result<ModelScores> {
    let (threshold, _) = best_f1_threshold(y, scores)?;
    let yhat = classify(scores, threshold);
    let report = group_report_projected(y, &yhat, partition, assignment)?;
    let stat_score = roc_auc(y, scores)?;

    let single_class = yhat.iter().all(|&p| p == 1) || yhat.iter().all(|&p| p == 0);
    let gap_options = group_gaps(&report, objective).ok();
    let (gaps, flagged) = match &gap_options {
        Some(gs) => (
            gs.iter().map(|g| g.unwrap_or(0.0)).collect::<Vec<f64>>(),
            gs.iter().any(|g| g.is_none()),
        ),
        // No computable gap set at all (e.g. EO with one group lacking
        // positives everywhere): score fairness as if gaps were zero and
        // flag the model degenerate.
        None => (vec![0.0; report.groups.len()], true),
    };
    let sizes: Vec<usize> = report.groups.iter().map(|g| g.size).collect();
    let fair_score = fair_score_global(&gaps, &sizes)?;
    Ok(ModelScores {
        threshold,
        stat_score,
        fair_score,
        trade_off_score: alpha * stat_score + (1.0 - alpha) * fair_score,
        degenerate: single_class || flagged,
        report,
    })
}

/// Pick the winner: non-degenerate before degenerate, then the largest
/// trade-off score, ties toward larger fair_score, then smaller n.
fn select_best(candidates: &[CandidateModel]) -> usize {
    let mut best = 0;
    for (i, c) in candidates.iter().enumerate().skip(1) {
        if candidate_beats(c, &candidates[best]) {
            best = i;
        }
    }
    best
}

fn candidate_beats(a: &CandidateModel, b: &CandidateModel) -> bool {
    if a.scores.degenerate != b.scores.degenerate {
        return !a.scores.degenerate;
    }
    if a.scores.trade_off_score != b.scores.trade_off_score {
        return a.scores.trade_off_score > b.scores.trade_off_score;
    }
    if a.scores.fair_score != b.scores.fair_score {
        return a.scores.fair_score > b.scores.fair_score;
    }
    a.schedule.n < b.schedule.n
}
