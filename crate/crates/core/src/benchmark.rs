//! The experiment runner: pit the reweighting correction against the
//! multiplier sweep on every (learner family × sensitive feature) pair
//! where the baseline trips a selection-rate alert.
//!
//! For each family a baseline trains once and is audited; features whose
//! best-off/worst-off selection ratio reaches the alert trigger get both
//! corrections, and every method — baseline included — is evaluated into
//! a [`BenchmarkCell`]: per-group OPR, FPR, TPR, ROC-AUC, PR-AUC, and a
//! calibration curve, with a gap per metric. Two [`MaxGapTable`]s then
//! count, per metric, which method holds the *strictly* largest gap —
//! baseline vs reweighting, and sweep vs reweighting. Ties award no
//! point, so the totals reward only clear-cut regressions.
//!
//! The desk-scale defaults (10,000-row stratified subsample, 200-round
//! gbdt) keep a full run in the minutes; `full_scale` lifts both caps
//! for overnight-style runs on the complete table.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::{detect_alerts, AuditConfig, FeatureSpec, DEFAULT_RATIO_THRESHOLD};
use crate::dataset::{split, subsample, DataTable};
use crate::error::{Error, Result};
use crate::fairdream::{run_fairdream, DEFAULT_STAT_WEIGHT};
use crate::gridsearch::{run_gridsearch, DEFAULT_ETA, DEFAULT_LAMBDA_BOUND};
use crate::learners::{classify, LearnerConfig, LearnerFamily, SampleWeights};
use crate::metrics::{
    best_f1_threshold, calibration_curve, calibration_gap_area, pr_auc, roc_auc, CalibrationCurve,
    FairObjective,
};
use crate::pipeline::FittedModel;
use crate::report::{write_report, ReportKind};

/// Candidates and grid points per correction, following the protocol of
/// testing ten new models per method.
pub const BENCHMARK_MODELS_PER_METHOD: usize = 10;
/// Desk-scale subsample size.
pub const DESK_SAMPLE_ROWS: usize = 10_000;
/// Desk-scale boosting rounds.
pub const DESK_GBDT_ESTIMATORS: usize = 200;

/// Who produced a cell's model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Baseline,
    Fairdream,
    Gridsearch,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Baseline => "baseline",
            Method::Fairdream => "fairdream",
            Method::Gridsearch => "gridsearch",
        }
    }
}

/// The six metrics every cell measures per group.
pub const CELL_METRICS: [&str; 6] = ["opr", "fpr", "tpr", "roc_auc", "pr_auc", "calibration"];

/// Benchmark settings. Everything a run needs beyond the table itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkConfig {
    /// Use the whole table and full-size learners instead of desk scale.
    pub full_scale: bool,
    /// Stratified subsample size at desk scale.
    pub sample_rows: usize,
    /// Fraction of rows held out as the audit split.
    pub split_fraction: f64,
    /// Seed for subsampling, splitting, and every learner.
    pub seed: u64,
    /// Best-off/worst-off selection ratio that triggers a correction.
    pub alert_ratio: f64,
    /// Reweighting candidates and sweep points per correction.
    pub models_per_method: usize,
    /// Sweep bound for the multiplier grid.
    pub lambda_bound: f64,
    /// Constraint tolerance η for the sweep's selection.
    pub eta: f64,
    /// Trade-off weight on the statistical score for the reweighting.
    pub alpha: f64,
    /// Bins per calibration curve.
    pub calibration_bins: usize,
}

impl BenchmarkConfig {
    /// Desk-scale defaults.
    pub fn desk(seed: u64) -> BenchmarkConfig {
        BenchmarkConfig {
            full_scale: false,
            sample_rows: DESK_SAMPLE_ROWS,
            split_fraction: 0.3,
            seed,
            alert_ratio: DEFAULT_RATIO_THRESHOLD,
            models_per_method: BENCHMARK_MODELS_PER_METHOD,
            lambda_bound: DEFAULT_LAMBDA_BOUND,
            eta: DEFAULT_ETA,
            alpha: DEFAULT_STAT_WEIGHT,
            calibration_bins: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rows == 0 {
            return Err(Error::Config("sample_rows must be positive".into()));
        }
        if !(self.split_fraction > 0.0 && self.split_fraction < 1.0) {
            return Err(Error::Config(format!(
                "split_fraction must lie strictly between 0 and 1, got {}",
                self.split_fraction
            )));
        }
        if !(self.alert_ratio > 1.0) {
            return Err(Error::Config(format!(
                "alert_ratio must exceed 1, got {}",
                self.alert_ratio
            )));
        }
        if self.models_per_method == 0 {
            return Err(Error::Config("models_per_method must be positive".into()));
        }
        if self.calibration_bins < 2 {
            return Err(Error::Config(format!(
                "calibration needs at least 2 bins, got {}",
                self.calibration_bins
            )));
        }
        Ok(())
    }

    /// The learner settings a family runs with at this scale. Boosting
    /// gets the desk-scale round cap; the forest grows deep (shallow
    /// forests blur group structure and flatter the sweep); the logistic
    /// solver gets a looser gradient bar because relabeled cost problems
    /// are near-separable and its strict default stalls in the tail.
    pub fn learner_for(&self, family: LearnerFamily) -> LearnerConfig {
        let mut config = LearnerConfig::new(family);
        config.seed = self.seed;
        match family {
            LearnerFamily::Gbdt => {
                config.n_estimators = if self.full_scale {
                    config.n_estimators
                } else {
                    DESK_GBDT_ESTIMATORS
                };
            }
            LearnerFamily::RandomForest => {
                config.max_depth = 10;
            }
            LearnerFamily::Logistic => {
                config.tolerance = 1e-6;
            }
        }
        config
    }
}

/// One group's measurements inside a cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellGroup {
    pub label: String,
    pub size: usize,
    /// Share of the group predicted positive.
    pub opr: f64,
    pub fpr: Option<f64>,
    pub tpr: Option<f64>,
    /// Ranking quality within the group alone; `None` when the group is
    /// single-class on the audit split.
    pub roc_auc: Option<f64>,
    pub pr_auc: Option<f64>,
    pub calibration: Option<CalibrationCurve>,
}

/// Per-metric gaps across a cell's groups: max − min over groups with a
/// defined value (`None` when fewer than two have one); the calibration
/// gap is the largest pairwise area between group curves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellGaps {
    pub opr: f64,
    pub fpr: Option<f64>,
    pub tpr: Option<f64>,
    pub roc_auc: Option<f64>,
    pub pr_auc: Option<f64>,
    pub calibration: Option<f64>,
}

/// One (family, feature, method) evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkCell {
    pub family: LearnerFamily,
    pub feature: String,
    pub method: Method,
    /// F1 threshold the hard predictions used.
    pub threshold: f64,
    /// Whole-split ranking quality, the number the method means compare.
    pub overall_roc_auc: f64,
    pub groups: Vec<CellGroup>,
    pub gaps: CellGaps,
}

/// Per metric, how often each of two methods held the strictly largest
/// gap across the compared cells.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaxGapTable {
    pub left: Method,
    pub right: Method,
    /// Metric names, aligned with the count vectors.
    pub metrics: Vec<String>,
    pub left_counts: Vec<u32>,
    pub right_counts: Vec<u32>,
}

impl MaxGapTable {
    fn new(left: Method, right: Method) -> MaxGapTable {
        MaxGapTable {
            left,
            right,
            metrics: CELL_METRICS.iter().map(|m| m.to_string()).collect(),
            left_counts: vec![0; CELL_METRICS.len()],
            right_counts: vec![0; CELL_METRICS.len()],
        }
    }

    pub fn left_total(&self) -> u32 {
        self.left_counts.iter().sum()
    }

    pub fn right_total(&self) -> u32 {
        self.right_counts.iter().sum()
    }

    /// Count of compared cells where `method` held the strictly larger
    /// gap on `metric`.
    pub fn count(&self, method: Method, metric: &str) -> Option<u32> {
        let idx = self.metrics.iter().position(|m| m == metric)?;
        if method == self.left {
            Some(self.left_counts[idx])
        } else if method == self.right {
            Some(self.right_counts[idx])
        } else {
            None
        }
    }
}

/// A (family, feature) pair the run did not correct, and why.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkippedPair {
    pub family: LearnerFamily,
    pub feature: String,
    pub reason: String,
}

/// Mean whole-split ROC-AUC per method over the corrected pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodMeans {
    pub baseline: Option<f64>,
    pub fairdream: Option<f64>,
    pub gridsearch: Option<f64>,
}

/// Everything one benchmark produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkRun {
    pub config: BenchmarkConfig,
    /// Families in the order they ran.
    pub families: Vec<LearnerFamily>,
    /// Feature names in the order they were scanned.
    pub features: Vec<String>,
    /// Rows actually used after any subsampling.
    pub rows_used: usize,
    pub cells: Vec<BenchmarkCell>,
    /// Baseline-vs-reweighting and sweep-vs-reweighting tallies.
    pub tables: Vec<MaxGapTable>,
    pub means: MethodMeans,
    pub skipped: Vec<SkippedPair>,
}

/// Run the full protocol on `table`.
///
/// Desk scale subsamples first (stratified on the target); the split,
/// every training, and both corrections all derive from `config.seed`,
/// so a rerun reproduces the run exactly.
pub fn run_benchmark(
    table: &DataTable,
    families: &[LearnerFamily],
    features: &[FeatureSpec],
    config: &BenchmarkConfig,
) -> Result<BenchmarkRun> {
    config.validate()?;
    if families.is_empty() {
        return Err(Error::Config("benchmark has no learner families".into()));
    }
    if features.is_empty() {
        return Err(Error::Config("benchmark has no features to scan".into()));
    }

    let desk_storage;
    let desk: &DataTable = if !config.full_scale && table.rows() > config.sample_rows {
        desk_storage = subsample(table, config.sample_rows, config.seed)?;
        &desk_storage
    } else {
        table
    };
    let rows_used = desk.rows();
    let (train_split, audit_split) = split(desk, config.split_fraction, config.seed)?;

    // Families are independent jobs; results are re-assembled in input
    // order so parallelism never changes the report.
    let per_family: Vec<(Vec<BenchmarkCell>, Vec<SkippedPair>)> = families
        .par_iter()
        .map(|&family| run_family(family, &train_split, &audit_split, features, config))
        .collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (fam_cells, fam_skipped) in per_family {
        cells.extend(fam_cells);
        skipped.extend(fam_skipped);
    }

    let tables = vec![
        max_gap_table(&cells, Method::Baseline, Method::Fairdream),
        max_gap_table(&cells, Method::Gridsearch, Method::Fairdream),
    ];
    let means = MethodMeans {
        baseline: method_mean(&cells, Method::Baseline),
        fairdream: method_mean(&cells, Method::Fairdream),
        gridsearch: method_mean(&cells, Method::Gridsearch),
    };

    Ok(BenchmarkRun {
        config: config.clone(),
        families: families.to_vec(),
        features: features.iter().map(|f| f.name.clone()).collect(),
        rows_used,
        cells,
        tables,
        means,
        skipped,
    })
}

/// Baseline, audit, and both corrections for one family.
fn run_family(
    family: LearnerFamily,
    train_split: &DataTable,
    audit_split: &DataTable,
    features: &[FeatureSpec],
    config: &BenchmarkConfig,
) -> Result<(Vec<BenchmarkCell>, Vec<SkippedPair>)> {
    let learner = config.learner_for(family);
    let baseline = FittedModel::train(
        train_split,
        &learner,
        &SampleWeights::uniform(train_split.rows()),
    )?;

    let mut audit_config = AuditConfig::new(features.to_vec());
    audit_config.ratio_threshold = config.alert_ratio;
    let outcome = detect_alerts(&baseline, audit_split, &audit_config)?;

    let base_scores = baseline.scores(audit_split)?;
    let mut cells = Vec::new();
    let mut skipped = Vec::new();

    for feature in features {
        if !outcome.alerts.iter().any(|a| a.feature == feature.name) {
            skipped.push(SkippedPair {
                family,
                feature: feature.name.clone(),
                reason: format!(
                    "no selection-rate alert at {}:1 on the audit split",
                    config.alert_ratio
                ),
            });
            continue;
        }

        let fairdream = run_fairdream(
            &baseline,
            train_split,
            audit_split,
            feature,
            FairObjective::DemographicParity,
            config.models_per_method,
            config.alpha,
            &learner,
        )?;
        let gridsearch = run_gridsearch(
            train_split,
            audit_split,
            feature,
            FairObjective::DemographicParity,
            config.models_per_method,
            config.lambda_bound,
            config.eta,
            &learner,
        )?;

        let fd_scores = fairdream.best_fitted().scores(audit_split)?;
        let gs_scores = gridsearch.best_fitted().scores(audit_split)?;

        for (method, scores) in [
            (Method::Baseline, &base_scores),
            (Method::Fairdream, &fd_scores),
            (Method::Gridsearch, &gs_scores),
        ] {
            cells.push(evaluate_cell(
                family,
                feature,
                method,
                scores,
                train_split,
                audit_split,
                config.calibration_bins,
            )?);
        }
    }
    Ok((cells, skipped))
}

/// Measure one model's audit-split scores into a cell.
fn evaluate_cell(
    family: LearnerFamily,
    feature: &FeatureSpec,
    method: Method,
    scores: &[f64],
    train_split: &DataTable,
    audit_split: &DataTable,
    calibration_bins: usize,
) -> Result<BenchmarkCell> {
    let partition = feature.build(train_split)?;
    let assignment = partition.project(audit_split)?;
    let y = audit_split.target();
    let (threshold, _) = best_f1_threshold(y, scores)?;
    let yhat = classify(scores, threshold);
    let overall_roc_auc = roc_auc(y, scores)?;

    let mut groups = Vec::new();
    for (g, group) in partition.groups.iter().enumerate() {
        let mut gy = Vec::new();
        let mut gs = Vec::new();
        let mut ghat = Vec::new();
        for i in 0..y.len() {
            if assignment[i] == Some(g as u32) {
                gy.push(y[i]);
                gs.push(scores[i]);
                ghat.push(yhat[i]);
            }
        }
        let size = gy.len();
        let positives: usize = ghat.iter().map(|&p| p as usize).sum();
        let opr = if size == 0 {
            0.0
        } else {
            positives as f64 / size as f64
        };
        let confusion = crate::metrics::confusion(&gy, &ghat)?;
        groups.push(CellGroup {
            label: group.label.clone(),
            size,
            opr,
            fpr: confusion.fpr(),
            tpr: confusion.tpr(),
            roc_auc: roc_auc(&gy, &gs).ok(),
            pr_auc: pr_auc(&gy, &gs).ok(),
            calibration: calibration_curve(&gy, &gs, calibration_bins).ok(),
        });
    }

    let gaps = compute_gaps(&groups)?;
    Ok(BenchmarkCell {
        family,
        feature: feature.name.clone(),
        method,
        threshold,
        overall_roc_auc,
        groups,
        gaps,
    })
}

/// Max − min over defined values; `None` when fewer than two are defined.
fn spread(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let defined: Vec<f64> = values.flatten().collect();
    if defined.len() < 2 {
        return None;
    }
    let max = defined.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = defined.iter().cloned().fold(f64::INFINITY, f64::min);
    Some(max - min)
}

fn compute_gaps(groups: &[CellGroup]) -> Result<CellGaps> {
    let live: Vec<&CellGroup> = groups.iter().filter(|g| g.size > 0).collect();
    let opr = spread(live.iter().map(|g| Some(g.opr))).ok_or_else(|| {
        Error::UndefinedMetric("a cell needs two non-empty groups for its gaps".into())
    })?;

    // Largest pairwise area between group curves. Degenerate scores can
    // collapse a group's curve to a single occupied bin or push two
    // groups' score ranges apart entirely; the area is undefined for such
    // a pair, so it contributes nothing — mirroring how a single-class
    // group contributes no ranking metrics.
    let curves: Vec<&CalibrationCurve> = live
        .iter()
        .filter_map(|g| g.calibration.as_ref())
        .collect();
    let mut calibration: Option<f64> = None;
    for a in 0..curves.len() {
        for b in a + 1..curves.len() {
            if let Ok(area) = calibration_gap_area(curves[a], curves[b]) {
                calibration = Some(calibration.map_or(area, |best: f64| best.max(area)));
            }
        }
    }

    Ok(CellGaps {
        opr,
        fpr: spread(live.iter().map(|g| g.fpr)),
        tpr: spread(live.iter().map(|g| g.tpr)),
        roc_auc: spread(live.iter().map(|g| g.roc_auc)),
        pr_auc: spread(live.iter().map(|g| g.pr_auc)),
        calibration,
    })
}

fn gap_by_metric(gaps: &CellGaps, metric: &str) -> Option<f64> {
    match metric {
        "opr" => Some(gaps.opr),
        "fpr" => gaps.fpr,
        "tpr" => gaps.tpr,
        "roc_auc" => gaps.roc_auc,
        "pr_auc" => gaps.pr_auc,
        "calibration" => gaps.calibration,
        _ => None,
    }
}

/// Tally, per metric, which of two methods holds the strictly larger gap
/// in each corrected (family, feature) pair. Ties and undefined gaps
/// award no point.
fn max_gap_table(cells: &[BenchmarkCell], left: Method, right: Method) -> MaxGapTable {
    let mut table = MaxGapTable::new(left, right);
    for lcell in cells.iter().filter(|c| c.method == left) {
        let Some(rcell) = cells
            .iter()
            .find(|c| c.method == right && c.family == lcell.family && c.feature == lcell.feature)
        else {
            continue;
        };
        for (idx, metric) in CELL_METRICS.iter().enumerate() {
            let (Some(lg), Some(rg)) = (
                gap_by_metric(&lcell.gaps, metric),
                gap_by_metric(&rcell.gaps, metric),
            ) else {
                continue;
            };
            if lg > rg {
                table.left_counts[idx] += 1;
            } else if rg > lg {
                table.right_counts[idx] += 1;
            }
        }
    }
    table
}

fn method_mean(cells: &[BenchmarkCell], method: Method) -> Option<f64> {
    let aucs: Vec<f64> = cells
        .iter()
        .filter(|c| c.method == method)
        .map(|c| c.overall_roc_auc)
        .collect();
    if aucs.is_empty() {
        None
    } else {
        Some(aucs.iter().sum::<f64>() / aucs.len() as f64)
    }
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

/// Render the run as an aligned text summary.
pub fn render_benchmark_text(run: &BenchmarkRun) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "benchmark: {} rows ({}), split {:.2}, seed {}\n",
        run.rows_used,
        if run.config.full_scale {
            "full scale"
        } else {
            "desk scale"
        },
        run.config.split_fraction,
        run.config.seed
    ));
    out.push_str(&format!(
        "families: {}; features: {}\n\n",
        run.families
            .iter()
            .map(|f| format!("{f:?}"))
            .collect::<Vec<_>>()
            .join(", "),
        run.features.join(", ")
    ));

    let fmt_mean = |m: Option<f64>| m.map_or("-".to_string(), |v| format!("{v:.4}"));
    out.push_str(&format!(
        "mean roc-auc over corrected cells: baseline {}, fairdream {}, gridsearch {}\n\n",
        fmt_mean(run.means.baseline),
        fmt_mean(run.means.fairdream),
        fmt_mean(run.means.gridsearch)
    ));

    for table in &run.tables {
        out.push_str(&format!(
            "largest-gap counts, {} vs {}:\n",
            table.left.as_str(),
            table.right.as_str()
        ));
        out.push_str(&format!("{:<14}", "metric"));
        out.push_str(&format!(
            "{:>12} {:>12}\n",
            table.left.as_str(),
            table.right.as_str()
        ));
        for (idx, metric) in table.metrics.iter().enumerate() {
            out.push_str(&format!(
                "{:<14}{:>12} {:>12}\n",
                metric, table.left_counts[idx], table.right_counts[idx]
            ));
        }
        out.push_str(&format!(
            "{:<14}{:>12} {:>12}\n\n",
            "total",
            table.left_total(),
            table.right_total()
        ));
    }

    if !run.skipped.is_empty() {
        out.push_str("skipped (no alert):\n");
        for s in &run.skipped {
            out.push_str(&format!("  {:?} × {}: {}\n", s.family, s.feature, s.reason));
        }
    }
    if run.cells.is_empty() {
        out.push_str("no corrections ran: nothing tripped the alert trigger\n");
    }
    out
}

/// Render the run's headline numbers as one CSV: per-method mean ROC-AUC,
/// then every max-gap tally row.
pub fn render_benchmark_csv(run: &BenchmarkRun) -> Result<String> {
    use crate::report::float_cell;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["section", "comparison", "metric", "left", "right"])
        .map_err(Error::from)?;
    let mean = |m: Option<f64>| m.map(float_cell).unwrap_or_default();
    w.write_record([
        "means".to_string(),
        "baseline/fairdream/gridsearch".to_string(),
        "roc_auc".to_string(),
        mean(run.means.baseline),
        format!(
            "{},{}",
            mean(run.means.fairdream),
            mean(run.means.gridsearch)
        ),
    ])
    .map_err(Error::from)?;
    for table in &run.tables {
        let comparison = format!("{}_vs_{}", table.left.as_str(), table.right.as_str());
        for (idx, metric) in table.metrics.iter().enumerate() {
            w.write_record([
                "max_gap_counts".to_string(),
                comparison.clone(),
                metric.clone(),
                table.left_counts[idx].to_string(),
                table.right_counts[idx].to_string(),
            ])
            .map_err(Error::from)?;
        }
        w.write_record([
            "max_gap_counts".to_string(),
            comparison,
            "total".to_string(),
            table.left_total().to_string(),
            table.right_total().to_string(),
        ])
        .map_err(Error::from)?;
    }
    crate::report::csv_into_string(w)
}

/// Write the run under `out_dir`: a versioned JSON summary, one CSV per
/// cell, one calibration CSV per cell, and one grouped-bar CSV per
/// corrected (family, feature) pair. Returns the created paths.
///
/// Emission is idempotent: files from a previous run in the same
/// directory are removed first, so a rerun leaves exactly this run's
/// files, byte-identical under the same seed.
pub fn emit_report(run: &BenchmarkRun, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    clean_previous(out_dir)?;

    let mut written = Vec::new();
    let summary_path = out_dir.join("benchmark.json");
    write_report(&summary_path, ReportKind::Benchmark, run)?;
    written.push(summary_path);

    for cell in &run.cells {
        let stem = format!(
            "{}_{}_{}",
            family_slug(cell.family),
            file_slug(&cell.feature),
            cell.method.as_str()
        );

        let cell_path = out_dir.join(format!("cell_{stem}.csv"));
        fs::write(&cell_path, cell_csv(cell)?).map_err(|e| Error::io(&cell_path, e))?;
        written.push(cell_path);

        let cal_path = out_dir.join(format!("calibration_{stem}.csv"));
        fs::write(&cal_path, calibration_csv(cell)?).map_err(|e| Error::io(&cal_path, e))?;
        written.push(cal_path);
    }

    // One grouped-bar file per corrected pair: metric × method gap table.
    let mut pairs: Vec<(LearnerFamily, String)> = Vec::new();
    for cell in &run.cells {
        let key = (cell.family, cell.feature.clone());
        if !pairs.contains(&key) {
            pairs.push(key);
        }
    }
    for (family, feature) in pairs {
        let path = out_dir.join(format!(
            "bars_{}_{}.csv",
            family_slug(family),
            file_slug(&feature)
        ));
        fs::write(&path, bars_csv(run, family, &feature)?).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Remove files a previous emission could have left, so reruns never mix.
fn clean_previous(out_dir: &Path) -> Result<()> {
    let entries = fs::read_dir(out_dir).map_err(|e| Error::io(out_dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(out_dir, e))?;
        let name = entry.file_name();
        let name = name.to_string_lossy();
        let ours = name == "benchmark.json"
            || ((name.starts_with("cell_")
                || name.starts_with("calibration_")
                || name.starts_with("bars_"))
                && name.ends_with(".csv"));
        if ours {
            fs::remove_file(entry.path()).map_err(|e| Error::io(&entry.path(), e))?;
        }
    }
    Ok(())
}

fn family_slug(family: LearnerFamily) -> &'static str {
    match family {
        LearnerFamily::Gbdt => "gbdt",
        LearnerFamily::RandomForest => "random_forest",
        LearnerFamily::Logistic => "logistic",
    }
}

/// Feature names become filename-safe slugs.
fn file_slug(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn cell_csv(cell: &BenchmarkCell) -> Result<String> {
    use crate::report::float_cell;
    let opt = |v: Option<f64>| v.map(float_cell).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "group", "size", "opr", "fpr", "tpr", "roc_auc", "pr_auc",
    ])
    .map_err(Error::from)?;
    for g in &cell.groups {
        w.write_record([
            g.label.clone(),
            g.size.to_string(),
            float_cell(g.opr),
            opt(g.fpr),
            opt(g.tpr),
            opt(g.roc_auc),
            opt(g.pr_auc),
        ])
        .map_err(Error::from)?;
    }
    w.write_record([
        "gap".to_string(),
        String::new(),
        float_cell(cell.gaps.opr),
        opt(cell.gaps.fpr),
        opt(cell.gaps.tpr),
        opt(cell.gaps.roc_auc),
        opt(cell.gaps.pr_auc),
    ])
    .map_err(Error::from)?;
    crate::report::csv_into_string(w)
}

fn calibration_csv(cell: &BenchmarkCell) -> Result<String> {
    use crate::report::float_cell;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["group", "bin_center", "positive_rate", "count"])
        .map_err(Error::from)?;
    for g in &cell.groups {
        if let Some(curve) = &g.calibration {
            for i in 0..curve.len() {
                w.write_record([
                    g.label.clone(),
                    float_cell(curve.centers[i]),
                    float_cell(curve.rates[i]),
                    curve.counts[i].to_string(),
                ])
                .map_err(Error::from)?;
            }
        }
    }
    crate::report::csv_into_string(w)
}

fn bars_csv(run: &BenchmarkRun, family: LearnerFamily, feature: &str) -> Result<String> {
    use crate::report::float_cell;
    let opt = |v: Option<f64>| v.map(float_cell).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["metric", "baseline", "fairdream", "gridsearch"])
        .map_err(Error::from)?;
    let cell_for = |method: Method| {
        run.cells
            .iter()
            .find(|c| c.family == family && c.feature == feature && c.method == method)
    };
    let (b, f, g) = (
        cell_for(Method::Baseline),
        cell_for(Method::Fairdream),
        cell_for(Method::Gridsearch),
    );
    for metric in CELL_METRICS {
        let gap = |c: Option<&BenchmarkCell>| opt(c.and_then(|c| gap_by_metric(&c.gaps, metric)));
        w.write_record([metric.to_string(), gap(b), gap(f), gap(g)])
            .map_err(Error::from)?;
    }
    crate::report::csv_into_string(w)
}
