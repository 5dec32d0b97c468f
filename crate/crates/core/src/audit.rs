//! Disparity detection: scan sensitive features for output-rate alerts.
//!
//! An audit classifies a held-out split at a single decision threshold,
//! partitions it along each configured sensitive feature, and compares
//! per-group output positive rates. Whenever the best-off group's rate
//! exceeds another group's by at least the configured ratio, an alert is
//! recorded naming both groups, both rates, and the observed ratio.
//!
//! Alerts are a screening device, not a verdict: they flag where a model
//! concentrates its positive predictions so a correction (or a human) can
//! take a closer look. Groups smaller than a floor are skipped outright —
//! a rate estimated from a handful of rows says nothing reliable.

use serde::{Deserialize, Serialize};

use crate::dataset::{bin_feature, BinStrategy, ColumnData, DataTable, GroupPartition};
use crate::error::{Error, Result};
use crate::learners::classify;
use crate::metrics::best_f1_threshold;
use crate::pipeline::FittedModel;

/// Default minimum advantaged/disadvantaged rate ratio that fires an alert.
pub const DEFAULT_RATIO_THRESHOLD: f64 = 3.0;
/// Groups with fewer audit rows than this are never compared.
pub const DEFAULT_MIN_GROUP_SIZE: usize = 50;

/// How the audit turns scores into hard predictions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdPolicy {
    /// F1-maximizing threshold on the audit split (ties keep the larger
    /// threshold). The default: it reflects how a tuned deployment would
    /// actually cut the scores.
    BestF1,
    /// A fixed threshold, e.g. 0.5.
    Fixed(f64),
}

impl ThresholdPolicy {
    /// Resolve the policy into a concrete threshold for these scores.
    pub fn resolve(&self, y: &[u8], scores: &[f64]) -> Result<f64> {
        match self {
            ThresholdPolicy::BestF1 => Ok(best_f1_threshold(y, scores)?.0),
            ThresholdPolicy::Fixed(t) => {
                if !t.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "fixed threshold must be finite, got {t}"
                    )));
                }
                Ok(*t)
            }
        }
    }
}

/// A sensitive feature to scan, with an optional explicit binning.
///
/// Leaving both `bins` and `edges` unset picks the dataset defaults:
/// quantile bins for numeric columns, category identity for categorical
/// ones. Explicit `edges` win over `bins` when both are present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureSpec {
    pub name: String,
    /// Number of quantile bins (numeric columns only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bins: Option<usize>,
    /// Explicit ascending interval edges (numeric columns only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<f64>>,
}

impl FeatureSpec {
    /// Scan `name` with the default binning for its column kind.
    pub fn named(name: impl Into<String>) -> FeatureSpec {
        FeatureSpec {
            name: name.into(),
            bins: None,
            edges: None,
        }
    }

    /// Scan a numeric feature with explicit interval edges.
    pub fn with_edges(name: impl Into<String>, edges: Vec<f64>) -> FeatureSpec {
        FeatureSpec {
            name: name.into(),
            bins: None,
            edges: Some(edges),
        }
    }

    /// The census scan set used when a caller names no features: the
    /// career-stage age bands plus sex. These are the two axes the
    /// toolkit's correction workflow is exercised on end to end.
    pub fn default_features() -> Vec<FeatureSpec> {
        vec![
            FeatureSpec::with_edges("age", vec![17.0, 29.0, 37.0, 91.0]),
            FeatureSpec::named("sex"),
        ]
    }

    /// Build the group partition this spec describes on `table`.
    pub fn build(&self, table: &DataTable) -> Result<GroupPartition> {
        let column = table.column(&self.name).ok_or_else(|| {
            Error::InvalidArgument(format!("table has no column '{}'", self.name))
        })?;
        let strategy = if let Some(edges) = &self.edges {
            BinStrategy::Edges(edges.clone())
        } else if let Some(k) = self.bins {
            BinStrategy::Quantile { k }
        } else {
            match column.data {
                ColumnData::Numeric(_) => BinStrategy::Quantile {
                    k: crate::dataset::DEFAULT_QUANTILE_BINS,
                },
                ColumnData::Categorical { .. } => BinStrategy::Categories,
            }
        };
        bin_feature(table, &self.name, &strategy)
    }
}

/// Audit settings: what to scan and when to raise an alert.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    /// Sensitive features to scan.
    pub features: Vec<FeatureSpec>,
    /// Fires when max-OPR / group-OPR reaches this value (must exceed 1).
    pub ratio_threshold: f64,
    /// Groups with fewer audit rows than this are skipped.
    pub min_group_size: usize,
    /// How scores become hard predictions.
    pub threshold_policy: ThresholdPolicy,
}

impl AuditConfig {
    pub fn new(features: Vec<FeatureSpec>) -> AuditConfig {
        AuditConfig {
            features,
            ratio_threshold: DEFAULT_RATIO_THRESHOLD,
            min_group_size: DEFAULT_MIN_GROUP_SIZE,
            threshold_policy: ThresholdPolicy::BestF1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.features.is_empty() {
            return Err(Error::Config("audit has no features to scan".into()));
        }
        if !(self.ratio_threshold > 1.0) {
            return Err(Error::Config(format!(
                "ratio_threshold must exceed 1, got {}",
                self.ratio_threshold
            )));
        }
        if self.min_group_size == 0 {
            return Err(Error::Config("min_group_size must be at least 1".into()));
        }
        Ok(())
    }
}

/// One detected disparity between two groups of one feature.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Alert {
    pub feature: String,
    /// Group on the short end of the model's positive predictions.
    pub disadvantaged: String,
    /// The feature's highest-OPR group.
    pub advantaged: String,
    pub disadvantaged_opr: f64,
    pub advantaged_opr: f64,
    /// Advantaged over disadvantaged OPR; `None` means the disadvantaged
    /// rate is zero and the ratio is infinite.
    pub ratio: Option<f64>,
    pub disadvantaged_size: usize,
    pub advantaged_size: usize,
    /// The configured ratio that fired, kept separate from the observation.
    pub trigger: f64,
}

impl Alert {
    /// The ratio as text: a number, or `inf` for a zero disadvantaged rate.
    pub fn ratio_display(&self) -> String {
        match self.ratio {
            Some(r) => format!("{r:.2}"),
            None => "inf".to_string(),
        }
    }
}

/// Everything one audit pass produced: threshold, alerts, scan coverage.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditOutcome {
    pub threshold: f64,
    pub alerts: Vec<Alert>,
    /// Features scanned, whether or not they alerted.
    pub scanned: Vec<String>,
}

/// Score `audit` with `model` and scan every configured feature.
///
/// The audit split must be disjoint from the rows the model trained on;
/// rates measured in-sample flatter the model and hide disparities.
pub fn detect_alerts(
    model: &FittedModel,
    audit: &DataTable,
    config: &AuditConfig,
) -> Result<AuditOutcome> {
    config.validate()?;
    let scores = model.scores(audit)?;
    let threshold = config.threshold_policy.resolve(audit.target(), &scores)?;
    let yhat = classify(&scores, threshold);
    let mut alerts = Vec::new();
    let mut scanned = Vec::new();
    for spec in &config.features {
        let partition = spec.build(audit)?;
        alerts.extend(alerts_for_partition(&yhat, &partition, config));
        scanned.push(spec.name.clone());
    }
    sort_alerts(&mut alerts);
    Ok(AuditOutcome {
        threshold,
        alerts,
        scanned,
    })
}

/// Scan one prebuilt partition against hard predictions.
///
/// This is the audit's core comparison, split out so corrections and tests
/// can drive it with predictions from any source.
pub fn alerts_for_partition(
    yhat: &[u8],
    partition: &GroupPartition,
    config: &AuditConfig,
) -> Vec<Alert> {
    // Per-group positive-prediction rates, skipping undersized groups.
    let mut rates: Vec<(usize, f64, usize)> = Vec::new(); // (group, opr, size)
    for (g, group) in partition.groups.iter().enumerate() {
        if group.size < config.min_group_size {
            continue;
        }
        let positives = partition
            .assignment
            .iter()
            .zip(yhat)
            .filter(|&(&a, &p)| a as usize == g && p == 1)
            .count();
        rates.push((g, positives as f64 / group.size as f64, group.size));
    }
    if rates.len() < 2 {
        return Vec::new();
    }
    let &(top, top_opr, top_size) = rates
        .iter()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(b.0.cmp(&a.0)))
        .unwrap();
    let mut alerts = Vec::new();
    for &(g, opr, size) in &rates {
        if g == top {
            continue;
        }
        let ratio = if opr > 0.0 {
            let r = top_opr / opr;
            if r < config.ratio_threshold {
                continue;
            }
            Some(r)
        } else if top_opr > 0.0 {
            None // infinite disparity
        } else {
            continue; // nobody gets positive predictions: nothing to compare
        };
        alerts.push(Alert {
            feature: partition.feature.clone(),
            disadvantaged: partition.groups[g].label.clone(),
            advantaged: partition.groups[top].label.clone(),
            disadvantaged_opr: opr,
            advantaged_opr: top_opr,
            ratio,
            disadvantaged_size: size,
            advantaged_size: top_size,
            trigger: config.ratio_threshold,
        });
    }
    alerts
}

/// Order alerts by severity: infinite ratios first, then descending ratio;
/// feature and group labels break exact ties deterministically.
fn sort_alerts(alerts: &mut [Alert]) {
    alerts.sort_by(|a, b| {
        let key = |x: &Alert| x.ratio.unwrap_or(f64::INFINITY);
        key(b)
            .partial_cmp(&key(a))
            .unwrap()
            .then_with(|| a.feature.cmp(&b.feature))
            .then_with(|| a.disadvantaged.cmp(&b.disadvantaged))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Column;

    /// Two groups with chosen sizes; predictions give each group an exact
    /// positive rate.
    fn partition_with_rates(
        sizes: &[usize],
        positives: &[usize],
    ) -> (GroupPartition, Vec<u8>, DataTable) {
        let n: usize = sizes.iter().sum();
        let mut cats = Vec::with_capacity(n);
        let mut yhat = Vec::with_capacity(n);
        for (g, (&size, &pos)) in sizes.iter().zip(positives).enumerate() {
            for i in 0..size {
                cats.push(format!("g{g}"));
                yhat.push(u8::from(i < pos));
            }
        }
        let mut dict: Vec<String> = Vec::new();
        let mut codes = Vec::new();
        for c in &cats {
            let code = match dict.iter().position(|d| d == c) {
                Some(i) => i as u32,
                None => {
                    dict.push(c.clone());
                    (dict.len() - 1) as u32
                }
            };
            codes.push(code);
        }
        let table = DataTable::new(
            vec![Column {
                name: "grp".into(),
                data: ColumnData::Categorical { dict, codes },
            }],
            vec![0; n],
            "y".into(),
        )
        .unwrap();
        let partition = bin_feature(&table, "grp", &BinStrategy::Categories).unwrap();
        (partition, yhat, table)
    }

    fn config() -> AuditConfig {
        AuditConfig::new(vec![FeatureSpec::named("grp")])
    }

    #[test]
    fn disparity_above_the_trigger_fires_one_alert() {
        // 66% vs 12%: ratio 5.5, the kind of spread an audit exists to catch.
        let (partition, yhat, _) = partition_with_rates(&[100, 100], &[66, 12]);
        let alerts = alerts_for_partition(&yhat, &partition, &config());
        assert_eq!(alerts.len(), 1);
        let a = &alerts[0];
        assert_eq!(a.advantaged, "g0");
        assert_eq!(a.disadvantaged, "g1");
        assert!((a.ratio.unwrap() - 5.5).abs() < 1e-12);
        assert_eq!((a.advantaged_size, a.disadvantaged_size), (100, 100));
        assert_eq!(a.trigger, 3.0);
    }

    #[test]
    fn mild_disparity_stays_quiet() {
        // 40% vs 20% is a 2:1 ratio; the default trigger is 3:1.
        let (partition, yhat, _) = partition_with_rates(&[100, 100], &[40, 20]);
        assert!(alerts_for_partition(&yhat, &partition, &config()).is_empty());
    }

    #[test]
    fn equal_rates_never_alert() {
        let (partition, yhat, _) = partition_with_rates(&[100, 100], &[30, 30]);
        assert!(alerts_for_partition(&yhat, &partition, &config()).is_empty());
    }

    #[test]
    fn zero_rate_reports_an_infinite_ratio() {
        let (partition, yhat, _) = partition_with_rates(&[100, 100], &[60, 0]);
        let alerts = alerts_for_partition(&yhat, &partition, &config());
        assert_eq!(alerts.len(), 1);
        assert_eq!(alerts[0].ratio, None);
        assert_eq!(alerts[0].ratio_display(), "inf");
        assert_eq!(alerts[0].disadvantaged_opr, 0.0);
    }

    #[test]
    fn tiny_groups_are_skipped_entirely() {
        // 10 rows at 0% against 60% elsewhere would scream if size were
        // ignored; under the 50-row floor it must stay silent.
        let (partition, yhat, _) = partition_with_rates(&[100, 10], &[60, 0]);
        assert!(alerts_for_partition(&yhat, &partition, &config()).is_empty());
    }

    #[test]
    fn every_lagging_group_gets_its_own_alert() {
        let (partition, yhat, _) = partition_with_rates(&[100, 100, 100], &[90, 20, 10]);
        let alerts = alerts_for_partition(&yhat, &partition, &config());
        assert_eq!(alerts.len(), 2);
        // Both compare against the same advantaged group.
        assert!(alerts.iter().all(|a| a.advantaged == "g0"));
    }

    #[test]
    fn lowering_the_trigger_only_adds_alerts() {
        let (partition, yhat, _) = partition_with_rates(&[100, 100, 100], &[90, 25, 10]);
        let mut strict = config();
        strict.ratio_threshold = 5.0;
        let mut lax = config();
        lax.ratio_threshold = 2.0;
        let strict_alerts = alerts_for_partition(&yhat, &partition, &strict);
        let lax_alerts = alerts_for_partition(&yhat, &partition, &lax);
        assert!(strict_alerts.len() <= lax_alerts.len());
        for alert in &strict_alerts {
            assert!(
                lax_alerts
                    .iter()
                    .any(|a| a.disadvantaged == alert.disadvantaged),
                "alert for {} vanished when the trigger dropped",
                alert.disadvantaged
            );
        }
    }

    #[test]
    fn alerts_sort_by_descending_severity() {
        let (partition, yhat, _) = partition_with_rates(&[100, 100, 100, 100], &[90, 0, 10, 25]);
        let mut alerts = alerts_for_partition(&yhat, &partition, &config());
        sort_alerts(&mut alerts);
        // Infinite first, then 9.0, then 3.6.
        assert_eq!(alerts[0].ratio, None);
        assert!((alerts[1].ratio.unwrap() - 9.0).abs() < 1e-12);
        assert!((alerts[2].ratio.unwrap() - 3.6).abs() < 1e-12);
    }

    #[test]
    fn end_to_end_detection_on_a_trained_model() {
        use crate::dataset::synth::generate;
        use crate::learners::{LearnerConfig, SampleWeights};

        let table = generate(3000, 11).unwrap();
        let (train, audit) = crate::dataset::split(&table, 0.3, 11).unwrap();
        let mut learner = LearnerConfig::new(crate::learners::LearnerFamily::Gbdt);
        learner.n_estimators = 60;
        let fitted =
            FittedModel::train(&train, &learner, &SampleWeights::uniform(train.rows())).unwrap();
        let config = AuditConfig::new(vec![
            FeatureSpec::with_edges("age", vec![17.0, 29.0, 37.0, 91.0]),
            FeatureSpec::named("sex"),
        ]);
        let outcome = detect_alerts(&fitted, &audit, &config).unwrap();
        assert_eq!(outcome.scanned, vec!["age", "sex"]);
        // The synthetic census is built around a strong age disparity; the
        // youngest bin must trip the default 3:1 trigger.
        assert!(
            outcome
                .alerts
                .iter()
                .any(|a| a.feature == "age" && a.disadvantaged == "[17, 29)"),
            "expected an age alert, got {:?}",
            outcome.alerts
        );
        // Determinism: an identical pass produces identical alerts.
        let again = detect_alerts(&fitted, &audit, &config).unwrap();
        assert_eq!(
            serde_json::to_string(&outcome).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
    }
}
