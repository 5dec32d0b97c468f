//! Classification and fairness metrics.
//!
//! Everything here is exact with respect to its definition: confusion
//! counts are integers, ROC-AUC uses midranks (tie-aware Mann-Whitney),
//! PR-AUC is the step-integral average precision with ties handled as
//! blocks, and rates with zero denominators are reported as undefined
//! (`None`) rather than silently coerced.

mod auc;
mod calibration;
mod threshold;

pub use auc::{pr_auc, roc_auc};
pub use calibration::{calibration_curve, calibration_gap_area, CalibrationCurve};
pub use threshold::best_f1_threshold;

use serde::{Deserialize, Serialize};

use crate::dataset::GroupPartition;
use crate::error::{Error, Result};

/// Exact confusion counts for 0/1 labels and predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_positives: usize,
    pub false_positives: usize,
    pub true_negatives: usize,
    pub false_negatives: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }

    pub fn actual_positives(&self) -> usize {
        self.true_positives + self.false_negatives
    }

    pub fn actual_negatives(&self) -> usize {
        self.false_positives + self.true_negatives
    }

    pub fn predicted_positives(&self) -> usize {
        self.true_positives + self.false_positives
    }

    /// TP / (TP + FP); `None` when nothing was predicted positive.
    pub fn precision(&self) -> Option<f64> {
        ratio(self.true_positives, self.predicted_positives())
    }

    /// TP / (TP + FN); `None` when there are no actual positives.
    pub fn tpr(&self) -> Option<f64> {
        ratio(self.true_positives, self.actual_positives())
    }

    /// FP / (FP + TN); `None` when there are no actual negatives.
    pub fn fpr(&self) -> Option<f64> {
        ratio(self.false_positives, self.actual_negatives())
    }

    /// (TP + FP) / total: the output positive rate. `None` on empty input.
    pub fn opr(&self) -> Option<f64> {
        ratio(self.predicted_positives(), self.total())
    }

    /// (TP + FN) / total: the base rate. `None` on empty input.
    pub fn base_rate(&self) -> Option<f64> {
        ratio(self.actual_positives(), self.total())
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    if den == 0 {
        None
    } else {
        Some(num as f64 / den as f64)
    }
}

/// Count the confusion cells of `yhat` against `y`.
pub fn confusion(y: &[u8], yhat: &[u8]) -> Result<ConfusionCounts> {
    if y.len() != yhat.len() {
        return Err(Error::Shape(format!(
            "labels have {} rows, predictions have {}",
            y.len(),
            yhat.len()
        )));
    }
    let mut c = ConfusionCounts {
        true_positives: 0,
        false_positives: 0,
        true_negatives: 0,
        false_negatives: 0,
    };
    for (&a, &p) in y.iter().zip(yhat) {
        if a > 1 || p > 1 {
            return Err(Error::InvalidArgument(format!(
                "labels and predictions must be 0 or 1, found ({a}, {p})"
            )));
        }
        match (a, p) {
            (1, 1) => c.true_positives += 1,
            (0, 1) => c.false_positives += 1,
            (0, 0) => c.true_negatives += 1,
            (1, 0) => c.false_negatives += 1,
            _ => unreachable!(),
        }
    }
    Ok(c)
}

/// Per-group rates for one partition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupStats {
    pub label: String,
    pub size: usize,
    pub confusion: ConfusionCounts,
    pub base_rate: f64,
    /// Output positive rate: share of the group predicted positive.
    pub opr: f64,
    pub tpr: Option<f64>,
    pub fpr: Option<f64>,
    pub precision: Option<f64>,
}

/// Group-by-group report for one feature partition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupReport {
    pub feature: String,
    pub groups: Vec<GroupStats>,
    /// Rows that could not be assigned to any group (e.g. categories never
    /// seen by a projected partition).
    pub unassigned: usize,
}

/// Build a [`GroupReport`] from a partition of the same table the labels
/// and predictions refer to.
pub fn group_report(y: &[u8], yhat: &[u8], partition: &GroupPartition) -> Result<GroupReport> {
    if partition.assignment.len() != y.len() {
        return Err(Error::Shape(format!(
            "partition covers {} rows, labels have {}",
            partition.assignment.len(),
            y.len()
        )));
    }
    let assignment: Vec<Option<u32>> = partition.assignment.iter().map(|&g| Some(g)).collect();
    group_report_assigned(y, yhat, &assignment, &group_labels(partition), &partition.feature)
}

/// Like [`group_report`], but for a projected assignment where some rows may
/// be unassigned (see [`GroupPartition::project`]).
pub fn group_report_projected(
    y: &[u8],
    yhat: &[u8],
    partition: &GroupPartition,
    assignment: &[Option<u32>],
) -> Result<GroupReport> {
    group_report_assigned(y, yhat, assignment, &group_labels(partition), &partition.feature)
}

fn group_labels(partition: &GroupPartition) -> Vec<String> {
    partition.groups.iter().map(|g| g.label.clone()).collect()
}

fn group_report_assigned(
    y: &[u8],
    yhat: &[u8],
    assignment: &[Option<u32>],
    labels: &[String],
    feature: &str,
) -> Result<GroupReport> {
    if y.len() != yhat.len() || y.len() != assignment.len() {
        return Err(Error::Shape(format!(
            "labels ({}), predictions ({}), and assignment ({}) must agree",
            y.len(),
            yhat.len(),
            assignment.len()
        )));
    }
    let n_groups = labels.len();
    let mut cells = vec![
        ConfusionCounts {
            true_positives: 0,
            false_positives: 0,
            true_negatives: 0,
            false_negatives: 0,
        };
        n_groups
    ];
    let mut unassigned = 0usize;
    for i in 0..y.len() {
        let Some(g) = assignment[i] else {
            unassigned += 1;
            continue;
        };
        let g = g as usize;
        if g >= n_groups {
            return Err(Error::Shape("assignment index out of range".into()));
        }
        let c = &mut cells[g];
        match (y[i], yhat[i]) {
            (1, 1) => c.true_positives += 1,
            (0, 1) => c.false_positives += 1,
            (0, 0) => c.true_negatives += 1,
            (1, 0) => c.false_negatives += 1,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "labels and predictions must be 0 or 1, found {other:?}"
                )))
            }
        }
    }
    let groups = labels
        .iter()
        .zip(&cells)
        .map(|(label, c)| GroupStats {
            label: label.clone(),
            size: c.total(),
            confusion: *c,
            base_rate: c.base_rate().unwrap_or(f64::NAN),
            opr: c.opr().unwrap_or(f64::NAN),
            tpr: c.tpr(),
            fpr: c.fpr(),
            precision: c.precision(),
        })
        .collect();
    Ok(GroupReport {
        feature: feature.to_string(),
        groups,
        unassigned,
    })
}

/// Which disparity a correction targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FairObjective {
    /// Equalize output positive rates across groups.
    DemographicParity,
    /// Equalize true- and false-positive rates across groups.
    EqualizedOdds,
}

impl std::str::FromStr for FairObjective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "demographic_parity" | "dp" => Ok(FairObjective::DemographicParity),
            "equalized_odds" | "eo" => Ok(FairObjective::EqualizedOdds),
            other => Err(Error::InvalidArgument(format!(
                "unknown fairness objective '{other}' (expected demographic_parity or equalized_odds)"
            ))),
        }
    }
}

impl std::fmt::Display for FairObjective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FairObjective::DemographicParity => "demographic_parity",
            FairObjective::EqualizedOdds => "equalized_odds",
        })
    }
}

/// Max-minus-min disparity summary over a group report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FairnessGaps {
    pub objective: FairObjective,
    /// Max minus min output positive rate.
    pub dp_gap: f64,
    /// Max minus min TPR over groups where TPR is defined.
    pub tpr_gap: Option<f64>,
    /// Max minus min FPR over groups where FPR is defined.
    pub fpr_gap: Option<f64>,
    /// Max over min output positive rate; `None` when the min is zero.
    pub opr_ratio: Option<f64>,
}

/// Compute disparity gaps from a group report.
///
/// Groups with a zero-size (projected-away) confusion table are skipped.
/// Requires at least two groups with defined rates for the objective's
/// primary indicator(s).
pub fn fairness_gaps(report: &GroupReport, objective: FairObjective) -> Result<FairnessGaps> {
    let live: Vec<&GroupStats> = report.groups.iter().filter(|g| g.size > 0).collect();
    if live.len() < 2 {
        return Err(Error::UndefinedMetric(format!(
            "fairness gaps need at least two non-empty groups, '{}' has {}",
            report.feature,
            live.len()
        )));
    }
    let oprs: Vec<f64> = live.iter().map(|g| g.opr).collect();
    let dp_gap = spread(&oprs).expect("live groups have defined opr");
    let tprs: Vec<f64> = live.iter().filter_map(|g| g.tpr).collect();
    let fprs: Vec<f64> = live.iter().filter_map(|g| g.fpr).collect();
    let tpr_gap = spread(&tprs);
    let fpr_gap = spread(&fprs);

    if objective == FairObjective::EqualizedOdds && (tprs.len() < 2 || fprs.len() < 2) {
        return Err(Error::UndefinedMetric(format!(
            "equalized-odds gaps need two groups with defined TPR and FPR on '{}'",
            report.feature
        )));
    }

    let max_opr = oprs.iter().cloned().fold(f64::MIN, f64::max);
    let min_opr = oprs.iter().cloned().fold(f64::MAX, f64::min);
    let opr_ratio = if min_opr > 0.0 {
        Some(max_opr / min_opr)
    } else {
        None
    };

    Ok(FairnessGaps {
        objective,
        dp_gap,
        tpr_gap,
        fpr_gap,
        opr_ratio,
    })
}

fn spread(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    Some(max - min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{bin_feature, BinStrategy, Column, ColumnData, DataTable};

    #[test]
    fn confusion_counts_exactly() {
        let y = [1, 1, 0, 0, 1, 0];
        let yhat = [1, 0, 1, 0, 1, 0];
        let c = confusion(&y, &yhat).unwrap();
        assert_eq!(c.true_positives, 2);
        assert_eq!(c.false_negatives, 1);
        assert_eq!(c.false_positives, 1);
        assert_eq!(c.true_negatives, 2);
        assert_eq!(c.total(), 6);
    }

    #[test]
    fn length_mismatch_and_bad_values_rejected() {
        assert!(confusion(&[1, 0], &[1]).is_err());
        assert!(confusion(&[2], &[1]).is_err());
    }

    #[test]
    fn all_positive_predictions_leave_fpr_defined_tnr_zero() {
        let y = [1, 0, 1];
        let yhat = [1, 1, 1];
        let c = confusion(&y, &yhat).unwrap();
        assert_eq!(c.opr(), Some(1.0));
        assert_eq!(c.fpr(), Some(1.0));
        assert_eq!(c.tpr(), Some(1.0));
    }

    #[test]
    fn empty_group_rates_are_none() {
        let c = confusion(&[], &[]).unwrap();
        assert_eq!(c.opr(), None);
        assert_eq!(c.precision(), None);
    }

    /// First fixture: two groups with known cells. Group 1 has
    /// tp=1 fn=3 fp=4 tn=20; group 2 has tp=1 fn=3 fp=6 tn=30. Expected
    /// precisions 0.2 and 1/7, both TPR 0.25, both FPR 1/6.
    #[test]
    fn group_report_two_group_fixture() {
        let mut y = Vec::new();
        let mut yhat = Vec::new();
        let mut feature = Vec::new();
        let mut push = |group: f64, label: u8, pred: u8, count: usize| {
            for _ in 0..count {
                feature.push(group);
                y.push(label);
                yhat.push(pred);
            }
        };
        push(1.0, 1, 1, 1); // g1 tp
        push(1.0, 1, 0, 3); // g1 fn
        push(1.0, 0, 1, 4); // g1 fp
        push(1.0, 0, 0, 20); // g1 tn
        push(2.0, 1, 1, 1); // g2 tp
        push(2.0, 1, 0, 3); // g2 fn
        push(2.0, 0, 1, 6); // g2 fp
        push(2.0, 0, 0, 30); // g2 tn

        let table = DataTable::new(
            vec![Column {
                name: "g".into(),
                data: ColumnData::Numeric(feature),
            }],
            y.clone(),
            "y".into(),
        )
        .unwrap();
        let partition = bin_feature(&table, "g", &BinStrategy::Edges(vec![1.0, 2.0, 3.0])).unwrap();
        let report = group_report(&y, &yhat, &partition).unwrap();

        let g1 = &report.groups[0];
        let g2 = &report.groups[1];
        assert_eq!(g1.size, 28);
        assert_eq!(g2.size, 40);
        assert!((g1.precision.unwrap() - 0.2).abs() < 1e-15);
        assert!((g2.precision.unwrap() - 1.0 / 7.0).abs() < 1e-15);
        assert!((g1.tpr.unwrap() - 0.25).abs() < 1e-15);
        assert!((g2.tpr.unwrap() - 0.25).abs() < 1e-15);
        assert!((g1.fpr.unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((g2.fpr.unwrap() - 1.0 / 6.0).abs() < 1e-15);
    }

    /// Second fixture: equal precision but unequal TPR. Males tp=25 with no
    /// errors; females tp=5, fn=20. Precision 1.0 for both; TPR 1.0 vs 0.2.
    #[test]
    fn group_report_equal_precision_unequal_tpr() {
        let mut y = Vec::new();
        let mut yhat = Vec::new();
        let mut cats = Vec::new();
        for _ in 0..25 {
            cats.push("male");
            y.push(1);
            yhat.push(1);
        }
        for _ in 0..5 {
            cats.push("female");
            y.push(1);
            yhat.push(1);
        }
        for _ in 0..20 {
            cats.push("female");
            y.push(1);
            yhat.push(0);
        }
        let mut dict: Vec<String> = Vec::new();
        let codes: Vec<u32> = cats
            .iter()
            .map(|&c| match dict.iter().position(|d| d == c) {
                Some(i) => i as u32,
                None => {
                    dict.push(c.to_string());
                    (dict.len() - 1) as u32
                }
            })
            .collect();
        let table = DataTable::new(
            vec![Column {
                name: "sex".into(),
                data: ColumnData::Categorical { dict, codes },
            }],
            y.clone(),
            "y".into(),
        )
        .unwrap();
        let partition = bin_feature(&table, "sex", &BinStrategy::Categories).unwrap();
        let report = group_report(&y, &yhat, &partition).unwrap();
        let male = report.groups.iter().find(|g| g.label == "male").unwrap();
        let female = report.groups.iter().find(|g| g.label == "female").unwrap();
        assert_eq!(male.precision, Some(1.0));
        assert_eq!(female.precision, Some(1.0));
        assert_eq!(male.tpr, Some(1.0));
        assert!((female.tpr.unwrap() - 0.2).abs() < 1e-15);
        // No actual negatives anywhere: FPR undefined, not zero.
        assert_eq!(male.fpr, None);
        assert_eq!(female.fpr, None);
    }

    #[test]
    fn opr_identity_holds() {
        // opr = base_rate * tpr + (1 - base_rate) * fpr, up to rounding.
        let y = [1, 1, 1, 0, 0, 0, 0, 1, 0, 1];
        let yhat = [1, 0, 1, 1, 0, 0, 1, 1, 0, 0];
        let c = confusion(&y, &yhat).unwrap();
        let opr = c.opr().unwrap();
        let identity = c.base_rate().unwrap() * c.tpr().unwrap()
            + (1.0 - c.base_rate().unwrap()) * c.fpr().unwrap();
        assert!((opr - identity).abs() < 1e-12);
    }

    #[test]
    fn gaps_from_fixture_report() {
        let y = vec![1, 0, 1, 0];
        let yhat = vec![1, 1, 0, 0];
        let table = DataTable::new(
            vec![Column {
                name: "g".into(),
                data: ColumnData::Numeric(vec![1.0, 1.0, 2.0, 2.0]),
            }],
            y.clone(),
            "y".into(),
        )
        .unwrap();
        let partition = bin_feature(&table, "g", &BinStrategy::Edges(vec![1.0, 2.0, 3.0])).unwrap();
        let report = group_report(&y, &yhat, &partition).unwrap();
        let gaps = fairness_gaps(&report, FairObjective::DemographicParity).unwrap();
        // Group 1 predicts everything positive (opr 1.0), group 2 nothing.
        assert_eq!(gaps.dp_gap, 1.0);
        assert_eq!(gaps.opr_ratio, None); // min opr is zero
        assert_eq!(gaps.tpr_gap, Some(1.0));
        assert_eq!(gaps.fpr_gap, Some(1.0));
    }

    #[test]
    fn eo_gaps_need_defined_rates() {
        // Group 2 has no actual negatives: FPR undefined there.
        let y = vec![1, 0, 1, 1];
        let yhat = vec![1, 1, 0, 1];
        let table = DataTable::new(
            vec![Column {
                name: "g".into(),
                data: ColumnData::Numeric(vec![1.0, 1.0, 2.0, 2.0]),
            }],
            y.clone(),
            "y".into(),
        )
        .unwrap();
        let partition = bin_feature(&table, "g", &BinStrategy::Edges(vec![1.0, 2.0, 3.0])).unwrap();
        let report = group_report(&y, &yhat, &partition).unwrap();
        let err = fairness_gaps(&report, FairObjective::EqualizedOdds).unwrap_err();
        assert!(matches!(err, Error::UndefinedMetric(_)));
        // DP still fine.
        assert!(fairness_gaps(&report, FairObjective::DemographicParity).is_ok());
    }

    #[test]
    fn single_group_rejected() {
        let y = vec![1, 0];
        let yhat = vec![1, 0];
        let table = DataTable::new(
            vec![Column {
                name: "g".into(),
                data: ColumnData::Numeric(vec![1.0, 2.0]),
            }],
            y.clone(),
            "y".into(),
        )
        .unwrap();
        let partition = bin_feature(&table, "g", &BinStrategy::Edges(vec![1.0, 3.0])).unwrap();
        let report = group_report(&y, &yhat, &partition).unwrap();
        assert!(fairness_gaps(&report, FairObjective::DemographicParity).is_err());
    }
}
