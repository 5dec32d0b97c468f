//! Structured report files and their text/CSV renderings.
//!
//! Every artifact the toolkit writes — audit outcomes, correction runs,
//! benchmark summaries — travels in one envelope:
//!
//! ```json
//! {"format": "fairdream-report", "version": 1, "kind": "audit", "payload": {...}}
//! ```
//!
//! The envelope names the payload shape (`kind`) and pins the schema
//! (`version`), so a reader can reject files it does not understand
//! instead of mis-parsing them. Payloads are plain data — tables of
//! numbers with their labels — never serialized models; models have
//! their own save format in the pipeline module.
//!
//! Renderers turn payloads into aligned text tables for terminals and
//! into CSV bodies for spreadsheets. Both are deterministic: the same
//! payload always renders byte-identically, which the benchmark's
//! rerun-equivalence guarantee builds on.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::audit::{Alert, AuditOutcome};
use crate::error::{Error, Result};
use crate::fairdream::FairdreamRun;
use crate::gridsearch::GridsearchRun;

/// Envelope marker; rejects files from unrelated tools.
pub const REPORT_FORMAT: &str = "fairdream-report";
/// Payload schema version this build reads and writes.
pub const REPORT_VERSION: u32 = 1;

/// What the payload describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Audit,
    Correction,
    Benchmark,
}

impl ReportKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportKind::Audit => "audit",
            ReportKind::Correction => "correction",
            ReportKind::Benchmark => "benchmark",
        }
    }
}

/// The on-disk wrapper around every payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope {
    pub format: String,
    pub version: u32,
    pub kind: ReportKind,
    pub payload: serde_json::Value,
}

/// Wrap `payload` in the envelope and write it as pretty JSON.
pub fn write_report<T: Serialize>(path: &Path, kind: ReportKind, payload: &T) -> Result<()> {
    let envelope = Envelope {
        format: REPORT_FORMAT.to_string(),
        version: REPORT_VERSION,
        kind,
        payload: serde_json::to_value(payload)
            .map_err(|e| Error::Format(format!("payload does not serialize: {e}")))?,
    };
    let body = serde_json::to_string_pretty(&envelope)
        .map_err(|e| Error::Format(format!("envelope does not serialize: {e}")))?;
    fs::write(path, body + "\n").map_err(|e| Error::io(path, e))
}

/// Read an envelope, verifying format marker and version.
pub fn read_report(path: &Path) -> Result<Envelope> {
    let body = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let envelope: Envelope = serde_json::from_str(&body)
        .map_err(|e| Error::Format(format!("{}: not a report file: {e}", path.display())))?;
    if envelope.format != REPORT_FORMAT {
        return Err(Error::Format(format!(
            "{}: format marker is '{}', expected '{REPORT_FORMAT}'",
            path.display(),
            envelope.format
        )));
    }
    if envelope.version != REPORT_VERSION {
        return Err(Error::Format(format!(
            "{}: report version {} is not readable by this build (wants {REPORT_VERSION})",
            path.display(),
            envelope.version
        )));
    }
    Ok(envelope)
}

// ---------------------------------------------------------------------------
// Audit payload
// ---------------------------------------------------------------------------

/// Positive-prediction rate of one group, one row of the audit table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupRateRow {
    pub feature: String,
    pub group: String,
    pub size: usize,
    pub opr: f64,
}

/// Everything `audit` writes: the scan outcome plus per-group rates for
/// context around the alerts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditPayload {
    /// Learner family of the audited model.
    pub family: String,
    /// Rows in the audited (held-out) split.
    pub audit_rows: usize,
    pub outcome: AuditOutcome,
    pub group_rates: Vec<GroupRateRow>,
}

/// Render the audit outcome as an aligned text table.
pub fn render_audit_text(payload: &AuditPayload) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "audit: {} model, {} audit rows, threshold {:.4}\n",
        payload.family, payload.audit_rows, payload.outcome.threshold
    ));
    out.push_str(&format!(
        "scanned features: {}\n\n",
        payload.outcome.scanned.join(", ")
    ));
    if payload.outcome.alerts.is_empty() {
        out.push_str("no alerts: every scanned ratio is under the trigger\n");
    } else {
        out.push_str(&format!(
            "{:<10} {:<14} {:<14} {:>8} {:>8} {:>7}\n",
            "feature", "disadvantaged", "advantaged", "low opr", "high opr", "ratio"
        ));
        for a in &payload.outcome.alerts {
            out.push_str(&format!(
                "{:<10} {:<14} {:<14} {:>8.4} {:>8.4} {:>7}\n",
                a.feature,
                a.disadvantaged,
                a.advantaged,
                a.disadvantaged_opr,
                a.advantaged_opr,
                a.ratio_display()
            ));
        }
    }
    out.push('\n');
    out.push_str(&format!(
        "{:<10} {:<14} {:>6} {:>8}\n",
        "feature", "group", "size", "opr"
    ));
    for row in &payload.group_rates {
        out.push_str(&format!(
            "{:<10} {:<14} {:>6} {:>8.4}\n",
            row.feature, row.group, row.size, row.opr
        ));
    }
    out
}

/// Render the audit alerts as CSV (one row per alert).
pub fn render_audit_csv(payload: &AuditPayload) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "feature",
        "disadvantaged",
        "advantaged",
        "disadvantaged_opr",
        "advantaged_opr",
        "ratio",
        "disadvantaged_size",
        "advantaged_size",
    ])
    .map_err(Error::from)?;
    for a in &payload.outcome.alerts {
        w.write_record([
            a.feature.clone(),
            a.disadvantaged.clone(),
            a.advantaged.clone(),
            float_cell(a.disadvantaged_opr),
            float_cell(a.advantaged_opr),
            a.ratio_display(),
            a.disadvantaged_size.to_string(),
            a.advantaged_size.to_string(),
        ])
        .map_err(Error::from)?;
    }
    csv_into_string(w)
}

// ---------------------------------------------------------------------------
// Correction payload
// ---------------------------------------------------------------------------

/// Which correction produced the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionMethod {
    Fairdream,
    Gridsearch,
}

impl CorrectionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CorrectionMethod::Fairdream => "fairdream",
            CorrectionMethod::Gridsearch => "gridsearch",
        }
    }
}

/// One reweighting candidate, tabled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateRow {
    /// Schedule exponent of this candidate.
    pub n: usize,
    pub threshold: f64,
    pub stat_score: f64,
    pub fair_score: f64,
    pub trade_off_score: f64,
    pub degenerate: bool,
    pub selected: bool,
}

/// One multiplier grid point, tabled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointRow {
    pub lambda: f64,
    pub target_group: String,
    /// Demographic-parity gap at this point's threshold.
    pub f_violation: f64,
    pub stat_score: f64,
    pub threshold: f64,
    pub degenerate: bool,
    pub selected: bool,
}

/// Per-group rates of one model, used for before/after tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupOutcomeRow {
    pub group: String,
    pub size: usize,
    pub opr: f64,
    pub tpr: Option<f64>,
    pub fpr: Option<f64>,
}

/// Everything `correct` writes: the candidate (or point) table plus
/// per-group rates before and after the correction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectionPayload {
    pub method: CorrectionMethod,
    pub feature: String,
    pub objective: String,
    /// Baseline ROC-AUC on the audit split.
    pub baseline_stat: f64,
    /// Reweighting candidates; empty for a multiplier sweep.
    pub candidates: Vec<CandidateRow>,
    /// Sweep points; empty for a reweighting run.
    pub points: Vec<PointRow>,
    pub baseline_groups: Vec<GroupOutcomeRow>,
    pub selected_groups: Vec<GroupOutcomeRow>,
}

fn group_rows(report: &crate::metrics::GroupReport) -> Vec<GroupOutcomeRow> {
    report
        .groups
        .iter()
        .map(|g| GroupOutcomeRow {
            group: g.label.clone(),
            size: g.size,
            opr: g.opr,
            tpr: g.tpr,
            fpr: g.fpr,
        })
        .collect()
}

/// Table a reweighting run.
pub fn correction_payload_from_fairdream(run: &FairdreamRun) -> CorrectionPayload {
    CorrectionPayload {
        method: CorrectionMethod::Fairdream,
        feature: run.feature.clone(),
        objective: format!("{:?}", run.objective),
        baseline_stat: run.baseline.stat_score,
        candidates: run
            .candidates
            .iter()
            .enumerate()
            .map(|(i, c)| CandidateRow {
                n: c.schedule.n,
                threshold: c.scores.threshold,
                stat_score: c.scores.stat_score,
                fair_score: c.scores.fair_score,
                trade_off_score: c.scores.trade_off_score,
                degenerate: c.scores.degenerate,
                selected: i == run.best,
            })
            .collect(),
        points: Vec::new(),
        baseline_groups: group_rows(&run.baseline.report),
        selected_groups: group_rows(&run.best_candidate().scores.report),
    }
}

/// Table a multiplier sweep. The sweep has no trained baseline of its
/// own, so the caller brings the baseline's audit ROC-AUC and report.
pub fn correction_payload_from_gridsearch(
    run: &GridsearchRun,
    baseline_stat: f64,
    baseline_report: &crate::metrics::GroupReport,
) -> CorrectionPayload {
    CorrectionPayload {
        method: CorrectionMethod::Gridsearch,
        feature: run.feature.clone(),
        objective: "DemographicParity".to_string(),
        baseline_stat,
        candidates: Vec::new(),
        points: run
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| PointRow {
                lambda: p.lambda,
                target_group: p.target_group.clone(),
                f_violation: p.f_violation,
                stat_score: p.stat_score,
                threshold: p.threshold,
                degenerate: p.degenerate,
                selected: i == run.best,
            })
            .collect(),
        baseline_groups: group_rows(baseline_report),
        selected_groups: group_rows(&run.best_point().report),
    }
}

/// Render a correction run as aligned text tables.
pub fn render_correction_text(payload: &CorrectionPayload) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "correction: {} on '{}', objective {}, baseline roc-auc {:.4}\n\n",
        payload.method.as_str(),
        payload.feature,
        payload.objective,
        payload.baseline_stat
    ));
    if !payload.candidates.is_empty() {
        out.push_str(&format!(
            "{:>3} {:>9} {:>8} {:>8} {:>9} {:>10} {:>9}\n",
            "n", "threshold", "stat", "fair", "trade-off", "degenerate", "selected"
        ));
        for c in &payload.candidates {
            out.push_str(&format!(
                "{:>3} {:>9.4} {:>8.4} {:>8.4} {:>9.4} {:>10} {:>9}\n",
                c.n,
                c.threshold,
                c.stat_score,
                c.fair_score,
                c.trade_off_score,
                c.degenerate,
                if c.selected { "<==" } else { "" }
            ));
        }
    }
    if !payload.points.is_empty() {
        out.push_str(&format!(
            "{:>7} {:<14} {:>8} {:>8} {:>9} {:>10} {:>9}\n",
            "lambda", "target", "F", "stat", "threshold", "degenerate", "selected"
        ));
        for p in &payload.points {
            out.push_str(&format!(
                "{:>+7.3} {:<14} {:>8.4} {:>8.4} {:>9.4} {:>10} {:>9}\n",
                p.lambda,
                p.target_group,
                p.f_violation,
                p.stat_score,
                p.threshold,
                p.degenerate,
                if p.selected { "<==" } else { "" }
            ));
        }
    }
    for (title, rows) in [
        ("baseline groups", &payload.baseline_groups),
        ("selected groups", &payload.selected_groups),
    ] {
        out.push_str(&format!(
            "\n{title}:\n{:<14} {:>6} {:>8} {:>8} {:>8}\n",
            "group", "size", "opr", "tpr", "fpr"
        ));
        for r in rows {
            out.push_str(&format!(
                "{:<14} {:>6} {:>8.4} {:>8} {:>8}\n",
                r.group,
                r.size,
                r.opr,
                opt_cell(r.tpr),
                opt_cell(r.fpr)
            ));
        }
    }
    out
}

/// Render the candidate/point table as CSV.
pub fn render_correction_csv(payload: &CorrectionPayload) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match payload.method {
        CorrectionMethod::Fairdream => {
            w.write_record([
                "n",
                "threshold",
                "stat_score",
                "fair_score",
                "trade_off_score",
                "degenerate",
                "selected",
            ])
            .map_err(Error::from)?;
            for c in &payload.candidates {
                w.write_record([
                    c.n.to_string(),
                    float_cell(c.threshold),
                    float_cell(c.stat_score),
                    float_cell(c.fair_score),
                    float_cell(c.trade_off_score),
                    c.degenerate.to_string(),
                    c.selected.to_string(),
                ])
                .map_err(Error::from)?;
            }
        }
        CorrectionMethod::Gridsearch => {
            w.write_record([
                "lambda",
                "target_group",
                "f_violation",
                "stat_score",
                "threshold",
                "degenerate",
                "selected",
            ])
            .map_err(Error::from)?;
            for p in &payload.points {
                w.write_record([
                    float_cell(p.lambda),
                    p.target_group.clone(),
                    float_cell(p.f_violation),
                    float_cell(p.stat_score),
                    float_cell(p.threshold),
                    p.degenerate.to_string(),
                    p.selected.to_string(),
                ])
                .map_err(Error::from)?;
            }
        }
    }
    csv_into_string(w)
}

// ---------------------------------------------------------------------------
// Shared rendering helpers
// ---------------------------------------------------------------------------

/// Deterministic float cell: shortest round-trip decimal.
pub(crate) fn float_cell(v: f64) -> String {
    let mut buffer = ryu_free_format(v);
    if buffer == "-0" {
        buffer = "0".to_string();
    }
    buffer
}

// `{}` on f64 is the shortest representation that round-trips, which is
// exactly the determinism the rerun guarantee needs.
fn ryu_free_format(v: f64) -> String {
    format!("{v}")
}

/// An optional rate for text tables: value or a dash.
pub(crate) fn opt_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.4}"),
        None => "-".to_string(),
    }
}

pub(crate) fn csv_into_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Format(format!("csv buffer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(format!("csv is not utf-8: {e}")))
}

/// Convenience: name alerts so tests and the CLI agree on phrasing.
pub fn describe_alert(alert: &Alert) -> String {
    format!(
        "{}: '{}' selected at {:.4} vs '{}' at {:.4} ({}:1)",
        alert.feature,
        alert.disadvantaged,
        alert.disadvantaged_opr,
        alert.advantaged,
        alert.advantaged_opr,
        alert.ratio_display()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn sample_audit_payload() -> AuditPayload {
        AuditPayload {
            family: "gbdt".into(),
            audit_rows: 300,
            outcome: AuditOutcome {
                threshold: 0.42,
                alerts: vec![Alert {
                    feature: "age".into(),
                    disadvantaged: "[17, 29)".into(),
                    advantaged: "[29, 37)".into(),
                    disadvantaged_opr: 0.05,
                    advantaged_opr: 0.25,
                    ratio: Some(5.0),
                    disadvantaged_size: 100,
                    advantaged_size: 90,
                    trigger: 3.0,
                }],
                scanned: vec!["age".into(), "sex".into()],
            },
            group_rates: vec![GroupRateRow {
                feature: "age".into(),
                group: "[17, 29)".into(),
                size: 100,
                opr: 0.05,
            }],
        }
    }

    #[test]
    fn envelope_round_trips() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("audit.json");
        let payload = sample_audit_payload();
        write_report(&path, ReportKind::Audit, &payload).unwrap();
        let envelope = read_report(&path).unwrap();
        assert_eq!(envelope.format, REPORT_FORMAT);
        assert_eq!(envelope.version, REPORT_VERSION);
        assert_eq!(envelope.kind, ReportKind::Audit);
        let back: AuditPayload = serde_json::from_value(envelope.payload).unwrap();
        assert_eq!(back.outcome.alerts.len(), 1);
        assert_eq!(back.outcome.alerts[0].feature, "age");
    }

    #[test]
    fn wrong_format_marker_is_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("other.json");
        std::fs::write(
            &path,
            r#"{"format":"other-tool","version":1,"kind":"audit","payload":{}}"#,
        )
        .unwrap();
        let err = read_report(&path).unwrap_err();
        assert!(matches!(err, Error::Format(_)), "{err}");
    }

    #[test]
    fn future_version_is_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("future.json");
        std::fs::write(
            &path,
            r#"{"format":"fairdream-report","version":99,"kind":"audit","payload":{}}"#,
        )
        .unwrap();
        let err = read_report(&path).unwrap_err();
        assert!(matches!(err, Error::Format(_)), "{err}");
    }

    #[test]
    fn text_rendering_lists_every_alert() {
        let payload = sample_audit_payload();
        let text = render_audit_text(&payload);
        assert!(text.contains("[17, 29)"));
        assert!(text.contains("5.00"));
        assert!(text.contains("scanned features: age, sex"));
    }

    #[test]
    fn audit_csv_has_a_row_per_alert() {
        let payload = sample_audit_payload();
        let body = render_audit_csv(&payload).unwrap();
        let lines: Vec<&str> = body.trim_end().lines().collect();
        assert_eq!(lines.len(), 2, "header + one alert:\n{body}");
        assert!(lines[1].starts_with("age,"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let payload = sample_audit_payload();
        assert_eq!(render_audit_text(&payload), render_audit_text(&payload));
        assert_eq!(
            render_audit_csv(&payload).unwrap(),
            render_audit_csv(&payload).unwrap()
        );
    }

    #[test]
    fn float_cells_round_trip() {
        for v in [0.1, 1.0 / 3.0, 0.123456789012345678, 1e-12, -0.0] {
            let cell = float_cell(v);
            let back: f64 = cell.parse().unwrap();
            assert_eq!(back, if v == 0.0 { 0.0 } else { v }, "cell {cell}");
        }
    }
}
