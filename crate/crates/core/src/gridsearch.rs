//! The constrained-optimization correction: reduce a fairness constraint
//! to cost-sensitive relabeling, sweep a grid of multipliers, and keep
//! the best constraint-satisfying model.
//!
//! Where the reweighting loop nudges a model by making disadvantaged
//! groups expensive to misclassify, this baseline *rewrites the problem*:
//! a signed multiplier per group turns the constrained objective into
//! per-row costs for predicting 1 versus 0,
//!
//! ```text
//! cost_i(1) = (1 − y_i) + λ_k / (|S_k|/N)      (row i in group k)
//! cost_i(0) = y_i
//! ```
//!
//! and the cheaper side becomes the training label, with the cost spread
//! `|cost(1) − cost(0)|` as the training weight. A negative λ_k makes
//! predicting 1 cheap for group k, so sweeping the multiplier from one
//! extreme to the other drags the group's positive rate from 0 toward 1.
//! Each grid point retrains from scratch on its relabeled, reweighted
//! copy of the train split, is thresholded by F1 on the audit split, and
//! measures its constraint violation `F` — the demographic-parity gap.
//! The selected point is the most accurate one satisfying `F ≤ η`, or
//! the least-violating point when none does.
//!
//! Aggressive multipliers legitimately produce one-sided models (every
//! row of a group pushed over the threshold). Those are real outcomes of
//! the method and stay measurable — and selectable — rather than being
//! filtered out; the `degenerate` flag only annotates them.

use serde::{Deserialize, Serialize};

use crate::audit::FeatureSpec;
use crate::dataset::{encode, DataTable, Encoder, GroupPartition};
use crate::error::{Error, Result};
use crate::learners::{classify, train, LearnerConfig, SampleWeights, TrainedModel};
use crate::metrics::{
    best_f1_threshold, fairness_gaps, group_report_projected, roc_auc, FairObjective, GroupReport,
};
use crate::pipeline::{encode_mode_for, FittedModel};

/// Grid points swept per disadvantaged group when the caller does not say.
pub const DEFAULT_GRID_SIZE: usize = 10;
/// Default sweep bound: at `|λ| = 2` the reduction already saturates
/// (every row of a half-population group relabeled), so the grid brackets
/// everything from "untouched" to "fully forced".
pub const DEFAULT_LAMBDA_BOUND: f64 = 2.0;
/// Default constraint tolerance η on the demographic-parity gap.
pub const DEFAULT_ETA: f64 = 0.05;

/// Relative slack accepted when checking the centering precondition
/// `Σ_k λ_k·|S_k| = 0`; multipliers built by [`run_gridsearch`] satisfy
/// it to rounding error, hand-built ones must come centered.
const CENTERING_TOL: f64 = 1e-9;

/// Turn per-group multipliers into per-row (relabel, weight) pairs.
///
/// For row `i` in group `k` with share `s_k = |S_k|/N`:
/// `cost(1) = (1 − y_i) + λ_k/s_k`, `cost(0) = y_i`; the cheaper
/// prediction becomes the new label (ties keep `y_i`) and the spread
/// `|cost(1) − cost(0)|` becomes the row's weight. With all multipliers
/// zero the reduction is the identity: labels kept, unit weights.
///
/// Multipliers must be centered: `Σ_k λ_k·|S_k| = 0`, so the sweep
/// pressures groups against each other instead of inflating everyone.
pub fn reduce_to_costs(
    y: &[u8],
    partition: &GroupPartition,
    multipliers: &[f64],
) -> Result<(Vec<u8>, Vec<f64>)> {
    let sizes = partition.sizes();
    if multipliers.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "{} multipliers for {} groups",
            multipliers.len(),
            sizes.len()
        )));
    }
    if y.len() != partition.assignment.len() {
        return Err(Error::Shape(format!(
            "{} labels for a partition of {} rows",
            y.len(),
            partition.assignment.len()
        )));
    }
    if let Some(idx) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidArgument(format!(
            "group '{}' is empty; every group needs rows to define its share",
            partition.groups[idx].label
        )));
    }
    if !multipliers.iter().all(|m| m.is_finite()) {
        return Err(Error::InvalidArgument(
            "multipliers must be finite".into(),
        ));
    }
    let imbalance: f64 = multipliers
        .iter()
        .zip(&sizes)
        .map(|(&m, &s)| m * s as f64)
        .sum();
    let scale: f64 = multipliers
        .iter()
        .zip(&sizes)
        .map(|(&m, &s)| (m * s as f64).abs())
        .sum();
    if imbalance.abs() > CENTERING_TOL * scale.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "multipliers are not centered: Σ λ_k·|S_k| = {imbalance:e}"
        )));
    }

    let n = y.len() as f64;
    // Per-group cost offset λ_k/s_k, hoisted out of the row loop.
    let offsets: Vec<f64> = multipliers
        .iter()
        .zip(&sizes)
        .map(|(&m, &s)| m / (s as f64 / n))
        .collect();

    let mut relabels = Vec::with_capacity(y.len());
    let mut weights = Vec::with_capacity(y.len());
    for (i, &label) in y.iter().enumerate() {
        let offset = offsets[partition.assignment[i] as usize];
        let cost1 = (1.0 - label as f64) + offset;
        let cost0 = label as f64;
        let relabel = if cost1 < cost0 {
            1
        } else if cost1 > cost0 {
            0
        } else {
            label
        };
        relabels.push(relabel);
        weights.push((cost1 - cost0).abs());
    }
    Ok((relabels, weights))
}

/// One grid point: the multiplier, the problem it induced, the model
/// trained on it, and how that model measured on the audit split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LagrangianPoint {
    /// Signed sweep coordinate `t`; positive values favor `target_group`
    /// (make its positive predictions cheaper).
    pub lambda: f64,
    /// Label of the group this point's sweep pushes for.
    pub target_group: String,
    /// Per-group multiplier vector (centered: `Σ λ_k·|S_k| = 0`).
    pub multipliers: Vec<f64>,
    /// Training labels after the cost reduction, one per train row.
    pub relabels: Vec<u8>,
    /// Training weights `|cost(1) − cost(0)|`, one per train row.
    pub weights: Vec<f64>,
    pub model: TrainedModel,
    /// F1-maximizing threshold on the audit split.
    pub threshold: f64,
    /// ROC-AUC on the audit split.
    pub stat_score: f64,
    /// Constraint violation `F`: the demographic-parity gap (max − min
    /// group positive rate) at this point's threshold.
    pub f_violation: f64,
    /// Hard predictions were single-class. Annotation only: such points
    /// are real outcomes of the sweep and stay selectable.
    pub degenerate: bool,
    pub report: GroupReport,
}

/// A full sweep: every grid point and the index of the selected one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridsearchRun {
    pub feature: String,
    /// Constraint tolerance the selection used.
    pub eta: f64,
    /// Sweep bound: `lambda` ranges over `[−bound, +bound]` per group.
    pub lambda_bound: f64,
    pub points: Vec<LagrangianPoint>,
    /// Index of the selected point in `points`.
    pub best: usize,
    /// Encoder shared by every point (fitted once on the train split).
    pub encoder: Encoder,
}

impl GridsearchRun {
    pub fn best_point(&self) -> &LagrangianPoint {
        &self.points[self.best]
    }

    /// The selected model, packaged for table-in scoring.
    pub fn best_fitted(&self) -> FittedModel {
        FittedModel::from_parts(self.encoder.clone(), self.best_point().model.clone())
    }
}

/// Sweep multiplier grids and select the best constraint-satisfying point.
///
/// The group with the highest train-split base rate is taken as the
/// best-off reference; every other group gets its own one-vs-rest sweep
/// of `grid_size` evenly spaced multipliers over `[−λ_bound, +λ_bound]`
/// (a two-group feature therefore yields a single signed sweep). At each
/// point the train split is relabeled and reweighted by
/// [`reduce_to_costs`], a fresh model is trained, and the audit split
/// measures `F` = demographic-parity gap at the point's own F1 threshold.
///
/// Selection: among points with `F ≤ eta`, the highest ROC-AUC wins;
/// when no point satisfies the tolerance, the smallest `F` wins. Ties
/// keep the earliest point, so reruns select identically.
///
/// Only the demographic-parity objective drives the sweep; other
/// objectives are measured on the results elsewhere, never swept here.
#[allow(clippy::too_many_arguments)]
pub fn run_gridsearch(
    train_split: &DataTable,
    audit_split: &DataTable,
    feature: &FeatureSpec,
    objective: FairObjective,
    grid_size: usize,
    lambda_bound: f64,
    eta: f64,
    config: &LearnerConfig,
) -> Result<GridsearchRun> {
    if objective != FairObjective::DemographicParity {
        return Err(Error::InvalidArgument(format!(
            "the multiplier sweep only supports the demographic-parity \
             objective, got {objective:?}"
        )));
    }
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!(
            "a sweep needs at least two grid points, got {grid_size}"
        )));
    }
    if !(lambda_bound.is_finite() && lambda_bound > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "the sweep bound must be positive and finite, got {lambda_bound}"
        )));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidArgument(format!(
            "the tolerance η is an absolute gap in [0, 1], got {eta}"
        )));
    }

    let partition = feature.build(train_split)?;
    let audit_assignment = partition.project(audit_split)?;
    let sizes = partition.sizes();
    if partition.n_groups() < 2 {
        return Err(Error::InvalidArgument(format!(
            "feature '{}' yields a single group; a sweep needs two",
            partition.feature
        )));
    }
    if let Some(idx) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidArgument(format!(
            "group '{}' of feature '{}' has no rows in the train split",
            partition.groups[idx].label, partition.feature
        )));
    }

    let y_train = train_split.target();
    let y_audit = audit_split.target();

    // The best-off group anchors the sweep: everyone else gets pushed
    // toward (or away from) it by their own multiplier.
    let advantaged = argmax_base_rate(y_train, &partition);
    let rest_size: Vec<usize> = (0..partition.n_groups())
        .map(|d| sizes.iter().sum::<usize>() - sizes[d])
        .collect();

    // One encoding serves every point; only labels and weights change.
    let (encoder, train_matrix) = encode(train_split, encode_mode_for(config.family))?;

    let mut points = Vec::new();
    for d in 0..partition.n_groups() {
        if d == advantaged {
            continue;
        }
        for j in 0..grid_size {
            let t = -lambda_bound + 2.0 * lambda_bound * j as f64 / (grid_size - 1) as f64;
            // λ_d = −t favors group d as t grows; the rest absorb the
            // counterweight in proportion, keeping Σ λ_k·|S_k| = 0.
            let counter = t * sizes[d] as f64 / rest_size[d] as f64;
            let multipliers: Vec<f64> = (0..partition.n_groups())
                .map(|k| if k == d { -t } else { counter })
                .collect();

            let (relabels, weights) = reduce_to_costs(y_train, &partition, &multipliers)?;
            let relabeled = train_matrix.with_target(relabels.clone())?;
            let sample_weights = SampleWeights::new(weights.clone())?;
            let model = train(&relabeled, &sample_weights, config)?;

            let fitted = FittedModel::from_parts(encoder.clone(), model);
            let scores = fitted.scores(audit_split)?;
            let (threshold, _) = best_f1_threshold(y_audit, &scores)?;
            let yhat = classify(&scores, threshold);
            let report = group_report_projected(y_audit, &yhat, &partition, &audit_assignment)?;
            let f_violation = fairness_gaps(&report, FairObjective::DemographicParity)?.dp_gap;
            let stat_score = roc_auc(y_audit, &scores)?;
            let degenerate = yhat.iter().all(|&p| p == 1) || yhat.iter().all(|&p| p == 0);

            points.push(LagrangianPoint {
                lambda: t,
                target_group: partition.groups[d].label.clone(),
                multipliers,
                relabels,
                weights,
                model: fitted.model().clone(),
                threshold,
                stat_score,
                f_violation,
                degenerate,
                report,
            });
        }
    }

    let best = select_best(&points, eta);
    Ok(GridsearchRun {
        feature: partition.feature.clone(),
        eta,
        lambda_bound,
        points,
        best,
        encoder,
    })
}

/// Index of the group with the highest train-split base rate (first on
/// ties), the sweep's best-off reference.
fn argmax_base_rate(y: &[u8], partition: &GroupPartition) -> usize {
    let k = partition.n_groups();
    let mut pos = vec![0usize; k];
    let mut tot = vec![0usize; k];
    for (i, &g) in partition.assignment.iter().enumerate() {
        tot[g as usize] += 1;
        pos[g as usize] += y[i] as usize;
    }
    let rate = |g: usize| pos[g] as f64 / tot[g].max(1) as f64;
    (0..k).fold(0, |best, g| if rate(g) > rate(best) { g } else { best })
}

/// Selection: max accuracy among tolerance-satisfying points, else the
/// least-violating point; ties keep the earliest.
fn select_best(points: &[LagrangianPoint], eta: f64) -> usize {
    let mut satisfying: Option<usize> = None;
    for (i, p) in points.iter().enumerate() {
        if p.f_violation <= eta {
            let keep = matches!(satisfying, Some(b) if points[b].stat_score >= p.stat_score);
            if !keep {
                satisfying = Some(i);
            }
        }
    }
    if let Some(b) = satisfying {
        return b;
    }
    let mut best = 0;
    for (i, p) in points.iter().enumerate().skip(1) {
        if p.f_violation < points[best].f_violation {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::FeatureSpec;
    use crate::dataset::split;
    use crate::dataset::synth::generate;
    use crate::learners::LearnerFamily;

    const TOL: f64 = 1e-12;

    /// Hand-built two-group partition over `n` rows: the first `split_at`
    /// rows are group A, the rest group B.
    fn two_groups(n: usize, split_at: usize) -> GroupPartition {
        use crate::dataset::{Group, GroupSpec};
        let group = |label: &str, size| Group {
            label: label.into(),
            spec: GroupSpec::Categories(vec![label.into()]),
            size,
        };
        GroupPartition {
            feature: "grp".into(),
            groups: vec![group("A", split_at), group("B", n - split_at)],
            assignment: (0..n).map(|i| u32::from(i >= split_at)).collect(),
        }
    }

    #[test]
    fn zero_multipliers_are_the_identity() {
        let y = vec![0, 1, 1, 0, 1, 0];
        let partition = two_groups(6, 3);
        let (relabels, weights) = reduce_to_costs(&y, &partition, &[0.0, 0.0]).unwrap();
        assert_eq!(relabels, y);
        assert!(weights.iter().all(|&w| w == 1.0));
    }

    #[test]
    fn strong_negative_multiplier_relabels_the_whole_group() {
        // Two equal-size groups, λ_A = −2·(|S_A|/N) = −1: every A row has
        // cost(1) = (1−y) − 2 < cost(0), so all of A is relabeled 1 with
        // weights 1 (y=0) and 3 (y=1); B tips the other way.
        let y = vec![0, 1, 0, 1];
        let partition = two_groups(4, 2);
        let (relabels, weights) = reduce_to_costs(&y, &partition, &[-1.0, 1.0]).unwrap();
        assert_eq!(relabels, vec![1, 1, 0, 0]);
        let expected = [1.0, 3.0, 3.0, 1.0];
        for (w, e) in weights.iter().zip(expected) {
            assert!((w - e).abs() <= TOL, "weight {w}, expected {e}");
        }
    }

    #[test]
    fn consistent_positive_row_keeps_its_label_at_unit_weight() {
        let y = vec![1, 1];
        let partition = two_groups(2, 1);
        let (relabels, weights) = reduce_to_costs(&y, &partition, &[0.0, 0.0]).unwrap();
        assert_eq!(relabels, vec![1, 1]);
        assert_eq!(weights, vec![1.0, 1.0]);
    }

    #[test]
    fn uncentered_multipliers_are_rejected() {
        let y = vec![0, 1, 0, 1];
        let partition = two_groups(4, 2);
        let err = reduce_to_costs(&y, &partition, &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)), "{err}");
        // Unequal groups need size-weighted centering, not a zero sum.
        let partition = two_groups(4, 1);
        assert!(reduce_to_costs(&y, &partition, &[-3.0, 1.0]).is_ok());
        assert!(reduce_to_costs(&y, &partition, &[-1.0, 1.0]).is_err());
    }

    #[test]
    fn weights_are_the_cost_spread() {
        // One group of 4, one of 12: offsets λ/share scale inversely with
        // the share, so the small group feels its multiplier 3× harder.
        let n = 16;
        let y: Vec<u8> = (0..n).map(|i| u8::from(i % 3 == 0)).collect();
        let partition = two_groups(n, 4);
        let (relabels, weights) =
            reduce_to_costs(&y, &partition, &[-0.15, 0.05]).unwrap();
        for i in 0..n {
            let share = if i < 4 { 0.25 } else { 0.75 };
            let lambda = if i < 4 { -0.15 } else { 0.05 };
            let cost1 = (1.0 - y[i] as f64) + lambda / share;
            let cost0 = y[i] as f64;
            let expect = if cost1 < cost0 {
                1
            } else if cost1 > cost0 {
                0
            } else {
                y[i]
            };
            assert_eq!(relabels[i], expect);
            assert!((weights[i] - (cost1 - cost0).abs()).abs() <= TOL);
        }
    }

    /// Shared fixture: a small census sample split for sweep tests.
    fn sweep_fixture() -> (DataTable, DataTable) {
        let table = generate(3_000, 7).unwrap();
        split(&table, 0.3, 7).unwrap()
    }

    fn quick_config() -> LearnerConfig {
        let mut config = LearnerConfig::new(LearnerFamily::Logistic);
        config.seed = 9;
        config
    }

    #[test]
    fn zero_lambda_point_reproduces_the_baseline() {
        let (train_split, audit_split) = sweep_fixture();
        let feature = FeatureSpec::named("sex");
        let config = quick_config();
        // An odd grid contains t = 0 exactly at its midpoint.
        let run = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::DemographicParity,
            11,
            2.0,
            DEFAULT_ETA,
            &config,
        )
        .unwrap();
        let zero = run
            .points
            .iter()
            .find(|p| p.lambda == 0.0)
            .expect("odd grid holds t = 0");
        assert_eq!(zero.relabels, train_split.target());
        assert!(zero.weights.iter().all(|&w| w == 1.0));

        let n = train_split.rows();
        let baseline = FittedModel::train(&train_split, &config, &SampleWeights::uniform(n))
            .unwrap();
        let base_scores = baseline.scores(&audit_split).unwrap();
        let zero_fitted = FittedModel::from_parts(run.encoder.clone(), zero.model.clone());
        let zero_scores = zero_fitted.scores(&audit_split).unwrap();
        for (a, b) in base_scores.iter().zip(&zero_scores) {
            assert!((a - b).abs() <= TOL, "baseline {a} vs zero-point {b}");
        }
    }

    #[test]
    fn selected_violation_matches_a_recomputed_gap() {
        let (train_split, audit_split) = sweep_fixture();
        let feature = FeatureSpec::named("sex");
        let run = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::DemographicParity,
            6,
            2.0,
            DEFAULT_ETA,
            &quick_config(),
        )
        .unwrap();
        let best = run.best_point();

        let partition = feature.build(&train_split).unwrap();
        let assignment = partition.project(&audit_split).unwrap();
        let scores = run.best_fitted().scores(&audit_split).unwrap();
        let yhat = classify(&scores, best.threshold);
        let report =
            group_report_projected(audit_split.target(), &yhat, &partition, &assignment).unwrap();
        let gaps = fairness_gaps(&report, FairObjective::DemographicParity).unwrap();
        assert!(
            (best.f_violation - gaps.dp_gap).abs() <= TOL,
            "stored F {} vs recomputed {}",
            best.f_violation,
            gaps.dp_gap
        );
    }

    #[test]
    fn vacuous_tolerance_selects_the_most_accurate_point() {
        let (train_split, audit_split) = sweep_fixture();
        let feature = FeatureSpec::named("sex");
        let run = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::DemographicParity,
            8,
            2.0,
            1.0,
            &quick_config(),
        )
        .unwrap();
        let max_stat = run
            .points
            .iter()
            .map(|p| p.stat_score)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((run.best_point().stat_score - max_stat).abs() <= TOL);
    }

    #[test]
    fn sweep_pressure_drags_the_target_groups_rate_upward() {
        // Pushing t from −bound to +bound makes positives ever cheaper
        // for the target group, so its train-split positive rate at each
        // point's threshold must climb — near-monotonically; retraining
        // noise is allowed at most one adjacent inversion per seed.
        for seed in [3, 11] {
            let table = generate(3_000, seed).unwrap();
            let (train_split, audit_split) = split(&table, 0.3, seed).unwrap();
            let feature = FeatureSpec::named("sex");
            let mut config = LearnerConfig::new(LearnerFamily::Logistic);
            config.seed = seed;
            // Relabeled extremes are near-separable; a loose gradient bar
            // keeps the solver out of its slow tail without moving rates.
            config.tolerance = 1e-6;
            let run = run_gridsearch(
                &train_split,
                &audit_split,
                &feature,
                FairObjective::DemographicParity,
                10,
                2.0,
                DEFAULT_ETA,
                &config,
            )
            .unwrap();

            let partition = feature.build(&train_split).unwrap();
            let target = run.points[0].target_group.clone();
            let g = partition
                .groups
                .iter()
                .position(|grp| grp.label == target)
                .unwrap();
            let y = train_split.target();
            let rates: Vec<f64> = run
                .points
                .iter()
                .map(|p| {
                    let fitted = FittedModel::from_parts(run.encoder.clone(), p.model.clone());
                    let scores = fitted.scores(&train_split).unwrap();
                    let yhat = classify(&scores, p.threshold);
                    let (mut hit, mut tot) = (0usize, 0usize);
                    for i in 0..y.len() {
                        if partition.assignment[i] as usize == g {
                            tot += 1;
                            hit += yhat[i] as usize;
                        }
                    }
                    hit as f64 / tot as f64
                })
                .collect();
            let inversions = rates.windows(2).filter(|w| w[1] < w[0]).count();
            assert!(
                inversions <= 1,
                "seed {seed}: rates {rates:?} invert {inversions} times"
            );
            // The sweep must actually bite: saturation at the favored end.
            assert!(rates[9] > rates[0], "sweep never moved the rate");
        }
    }

    #[test]
    fn extreme_points_saturate_and_stay_measurable() {
        let (train_split, audit_split) = sweep_fixture();
        let feature = FeatureSpec::named("sex");
        let run = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::DemographicParity,
            4,
            2.0,
            DEFAULT_ETA,
            &quick_config(),
        )
        .unwrap();
        let partition = feature.build(&train_split).unwrap();
        let target = run.points[0].target_group.clone();
        let g = partition
            .groups
            .iter()
            .position(|grp| grp.label == target)
            .unwrap() as u32;
        // At t = +bound the target group's training labels are all 1.
        let top = run.points.last().unwrap();
        assert!(top.lambda == 2.0);
        for (i, &grp) in partition.assignment.iter().enumerate() {
            if grp == g {
                assert_eq!(top.relabels[i], 1);
            }
        }
        // Every point carries a full measurement regardless of saturation.
        for p in &run.points {
            assert!(p.f_violation.is_finite());
            assert!(p.stat_score.is_finite());
            assert!(p.weights.iter().all(|&w| w >= 0.0));
            assert!(p.relabels.iter().all(|&r| r <= 1));
        }
    }

    #[test]
    fn reruns_select_identically() {
        let (train_split, audit_split) = sweep_fixture();
        let feature = FeatureSpec::named("sex");
        let config = quick_config();
        let a = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::DemographicParity,
            6,
            2.0,
            DEFAULT_ETA,
            &config,
        )
        .unwrap();
        let b = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::DemographicParity,
            6,
            2.0,
            DEFAULT_ETA,
            &config,
        )
        .unwrap();
        assert_eq!(a.best, b.best);
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert!((pa.stat_score - pb.stat_score).abs() <= TOL);
            assert!((pa.f_violation - pb.f_violation).abs() <= TOL);
        }
    }

    #[test]
    fn only_the_parity_objective_sweeps() {
        let (train_split, audit_split) = sweep_fixture();
        let feature = FeatureSpec::named("sex");
        let err = run_gridsearch(
            &train_split,
            &audit_split,
            &feature,
            FairObjective::EqualizedOdds,
            6,
            2.0,
            DEFAULT_ETA,
            &quick_config(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)), "{err}");
    }
}
