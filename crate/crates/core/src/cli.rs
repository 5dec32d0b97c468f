//! The `fairdream` command line: audit a model for selection-rate
//! disparities, correct one with either method, run the benchmark, or
//! re-render a previously written report.
//!
//! Settings come from an optional TOML config file; every flag overrides
//! its config key, so a versioned config can pin a run while the command
//! line tweaks one knob. All commands are reproducible — identical config
//! and seed produce identical report bodies — and none mutates the input
//! dataset.
//!
//! Exit codes: 0 on success, 2 for configuration errors (bad paths,
//! malformed config or schema, out-of-range settings), 3 for runtime
//! failures (training, unreadable data mid-run, unwritable output).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::audit::{detect_alerts, AuditConfig, FeatureSpec};
use crate::benchmark::{
    emit_report, render_benchmark_csv, render_benchmark_text, run_benchmark, BenchmarkConfig,
    BenchmarkRun,
};
use crate::dataset::synth;
use crate::dataset::{load_table, split, DataTable, Schema};
use crate::error::Error;
use crate::fairdream::{run_fairdream, DEFAULT_CANDIDATES, DEFAULT_STAT_WEIGHT};
use crate::gridsearch::{run_gridsearch, DEFAULT_ETA, DEFAULT_GRID_SIZE, DEFAULT_LAMBDA_BOUND};
use crate::learners::{classify, LearnerConfig, LearnerFamily, SampleWeights};
use crate::metrics::{best_f1_threshold, group_report_projected, roc_auc, FairObjective};
use crate::pipeline::FittedModel;
use crate::report::{
    correction_payload_from_fairdream, correction_payload_from_gridsearch, read_report,
    render_audit_csv, render_audit_text, render_correction_csv, render_correction_text,
    write_report, AuditPayload, GroupRateRow, ReportKind,
};

/// Default split fraction held out for auditing.
const DEFAULT_SPLIT_FRACTION: f64 = 0.3;

// ---------------------------------------------------------------------------
// Command-line surface
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(
    name = "fairdream",
    about = "Fairness audit and correction for binary classifiers on tabular data",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a baseline and scan sensitive features for selection-rate alerts.
    Audit(AuditArgs),
    /// Correct one feature's disparity and write the selected model.
    Correct(CorrectArgs),
    /// Run both corrections across families and alerting features.
    Benchmark(BenchmarkArgs),
    /// Re-render a written report file as text or CSV.
    Report(ReportArgs),
    /// Generate the synthetic census table as a CSV dataset.
    Synth(SynthArgs),
}

/// Flags shared by every pipeline command; each overrides its config key.
#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML run configuration.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Dataset CSV.
    #[arg(long, value_name = "FILE")]
    data: Option<PathBuf>,
    /// Column schema TOML.
    #[arg(long, value_name = "FILE")]
    schema: Option<PathBuf>,
    /// Seed for splitting and training.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for reports.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Rendering printed to stdout.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct CorrectArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sensitive feature to correct (must be in the audit scan set).
    #[arg(long)]
    feature: String,
    /// Correction method.
    #[arg(long, value_enum)]
    method: MethodArg,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Learner families to run (default: all three).
    #[arg(long, value_enum, value_delimiter = ',')]
    families: Option<Vec<FamilyArg>>,
    /// Use the whole table and full-size learners.
    #[arg(long)]
    full_scale: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Report file written by audit, correct, or benchmark.
    input: PathBuf,
    /// Rendering printed to stdout.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Also write the rendering to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Rows to generate.
    #[arg(long, default_value_t = 48_842)]
    rows: usize,
    /// Generator seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// CSV path to write.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Fairdream,
    Gridsearch,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gbdt,
    RandomForest,
    Logistic,
}

impl From<FamilyArg> for LearnerFamily {
    fn from(f: FamilyArg) -> LearnerFamily {
        match f {
            FamilyArg::Gbdt => LearnerFamily::Gbdt,
            FamilyArg::RandomForest => LearnerFamily::RandomForest,
            FamilyArg::Logistic => LearnerFamily::Logistic,
        }
    }
}

// ---------------------------------------------------------------------------
// Config file
// ---------------------------------------------------------------------------

/// The TOML run configuration. Every field is optional; flags override.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Dataset CSV path.
    pub data: Option<PathBuf>,
    /// Column schema TOML path.
    pub schema: Option<PathBuf>,
    pub seed: Option<u64>,
    /// Fraction held out as the audit split.
    pub split_fraction: Option<f64>,
    /// Output directory.
    pub out: Option<PathBuf>,
    /// `text` or `csv`.
    pub format: Option<String>,
    pub learner: LearnerSection,
    pub audit: AuditSection,
    pub correct: CorrectSection,
    pub benchmark: BenchmarkSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LearnerSection {
    /// `gbdt`, `random_forest`, or `logistic`.
    pub family: Option<LearnerFamily>,
    pub n_estimators: Option<usize>,
    pub max_depth: Option<usize>,
    pub learning_rate: Option<f64>,
    pub l2_penalty: Option<f64>,
    pub max_iterations: Option<usize>,
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AuditSection {
    pub ratio_threshold: Option<f64>,
    pub min_group_size: Option<usize>,
    /// Features to scan; the default census set when empty.
    #[serde(rename = "feature")]
    pub features: Vec<FeatureSpec>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CorrectSection {
    /// `demographic_parity` or `equalized_odds`.
    pub objective: Option<String>,
    pub alpha: Option<f64>,
    pub candidates: Option<usize>,
    pub grid_size: Option<usize>,
    pub lambda_bound: Option<f64>,
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchmarkSection {
    pub families: Option<Vec<LearnerFamily>>,
    pub full_scale: Option<bool>,
    pub sample_rows: Option<usize>,
    pub models_per_method: Option<usize>,
    pub calibration_bins: Option<usize>,
}

// ---------------------------------------------------------------------------
// Error classification → exit codes
// ---------------------------------------------------------------------------

enum CliError {
    /// Bad inputs: missing files, malformed config, out-of-range settings.
    Config(String),
    /// The run itself failed after inputs were accepted.
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Config(_) | Error::Schema(_) | Error::InvalidArgument(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Runtime(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn config_error(message: impl Into<String>) -> CliError {
    CliError::Config(message.into())
}

/// Parse arguments, run, and return the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Help and version land here too; clap picks exit 0 for those and
        // 2 for usage errors.
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => 0,
        Err(CliError::Config(message)) => {
            eprintln!("configuration error: {message}");
            2
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            3
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Audit(args) => cmd_audit(args),
        Command::Correct(args) => cmd_correct(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::Report(args) => cmd_report(args),
        Command::Synth(args) => cmd_synth(args),
    }
}

// ---------------------------------------------------------------------------
// Settings resolution (config file + flag overrides)
// ---------------------------------------------------------------------------

/// Everything a pipeline command needs, after merging config and flags.
struct Resolved {
    table: DataTable,
    seed: u64,
    split_fraction: f64,
    out: PathBuf,
    format: FormatArg,
    learner: LearnerConfig,
    audit_config: AuditConfig,
    objective: FairObjective,
    alpha: f64,
    candidates: usize,
    grid_size: usize,
    lambda_bound: f64,
    eta: f64,
    config: RunConfig,
}

fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| config_error(format!("bad config {}: {e}", path.display())))
}

fn resolve(common: &CommonArgs) -> CliResult<Resolved> {
    let config = load_config(common.config.as_deref())?;

    let data = common
        .data
        .clone()
        .or_else(|| config.data.clone())
        .ok_or_else(|| config_error("no dataset: pass --data or set `data` in the config"))?;
    let schema_path = common
        .schema
        .clone()
        .or_else(|| config.schema.clone())
        .ok_or_else(|| config_error("no schema: pass --schema or set `schema` in the config"))?;
    if !data.is_file() {
        return Err(config_error(format!(
            "dataset {} does not exist",
            data.display()
        )));
    }
    if !schema_path.is_file() {
        return Err(config_error(format!(
            "schema {} does not exist",
            schema_path.display()
        )));
    }

    let seed = common.seed.or(config.seed).unwrap_or(0);
    let split_fraction = config.split_fraction.unwrap_or(DEFAULT_SPLIT_FRACTION);
    if !(split_fraction > 0.0 && split_fraction < 1.0) {
        return Err(config_error(format!(
            "split_fraction must lie strictly between 0 and 1, got {split_fraction}"
        )));
    }
    let out = common
        .out
        .clone()
        .or_else(|| config.out.clone())
        .unwrap_or_else(|| PathBuf::from("reports"));
    let format = match (common.format, config.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some("text")) | (None, None) => FormatArg::Text,
        (None, Some("csv")) => FormatArg::Csv,
        (None, Some(other)) => {
            return Err(config_error(format!(
                "unknown format '{other}' (expected text or csv)"
            )));
        }
    };

    let mut learner = LearnerConfig::new(config.learner.family.unwrap_or(LearnerFamily::Gbdt));
    learner.seed = seed;
    if let Some(v) = config.learner.n_estimators {
        learner.n_estimators = v;
    }
    if let Some(v) = config.learner.max_depth {
        learner.max_depth = v;
    }
    if let Some(v) = config.learner.learning_rate {
        learner.learning_rate = v;
    }
    if let Some(v) = config.learner.l2_penalty {
        learner.l2_penalty = v;
    }
    if let Some(v) = config.learner.max_iterations {
        learner.max_iterations = v;
    }
    if let Some(v) = config.learner.tolerance {
        learner.tolerance = v;
    }

    let features = if config.audit.features.is_empty() {
        FeatureSpec::default_features()
    } else {
        config.audit.features.clone()
    };
    let mut audit_config = AuditConfig::new(features);
    if let Some(v) = config.audit.ratio_threshold {
        audit_config.ratio_threshold = v;
    }
    if let Some(v) = config.audit.min_group_size {
        audit_config.min_group_size = v;
    }
    audit_config.validate()?;

    let objective = config
        .correct
        .objective
        .as_deref()
        .unwrap_or("demographic_parity")
        .parse::<FairObjective>()?;
    let alpha = config.correct.alpha.unwrap_or(DEFAULT_STAT_WEIGHT);
    let candidates = config.correct.candidates.unwrap_or(DEFAULT_CANDIDATES);
    let grid_size = config.correct.grid_size.unwrap_or(DEFAULT_GRID_SIZE);
    let lambda_bound = config.correct.lambda_bound.unwrap_or(DEFAULT_LAMBDA_BOUND);
    let eta = config.correct.eta.unwrap_or(DEFAULT_ETA);

    let schema = Schema::from_path(&schema_path)?;
    let table = load_table(&data, &schema)?;

    Ok(Resolved {
        table,
        seed,
        split_fraction,
        out,
        format,
        learner,
        audit_config,
        objective,
        alpha,
        candidates,
        grid_size,
        lambda_bound,
        eta,
        config,
    })
}

impl Resolved {
    /// Train/audit split of the loaded table.
    fn split(&self) -> CliResult<(DataTable, DataTable)> {
        Ok(split(&self.table, self.split_fraction, self.seed)?)
    }

    /// Baseline model on the train split with uniform weights.
    fn train_baseline(&self, train: &DataTable) -> CliResult<FittedModel> {
        Ok(FittedModel::train(
            train,
            &self.learner,
            &SampleWeights::uniform(train.rows()),
        )?)
    }

    fn ensure_out_dir(&self) -> CliResult<()> {
        fs::create_dir_all(&self.out).map_err(|e| CliError::Runtime(Error::io(&self.out, e)))?;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_audit(args: AuditArgs) -> CliResult<()> {
    let resolved = resolve(&args.common)?;
    let (train, audit_split) = resolved.split()?;
    let baseline = resolved.train_baseline(&train)?;
    let outcome = detect_alerts(&baseline, &audit_split, &resolved.audit_config)?;

    // Per-group positive rates give the alert table its context.
    let scores = baseline.scores(&audit_split)?;
    let yhat = classify(&scores, outcome.threshold);
    let mut group_rates = Vec::new();
    for spec in &resolved.audit_config.features {
        let partition = spec.build(&audit_split)?;
        let mut positives = vec![0usize; partition.n_groups()];
        for (row, &g) in partition.assignment.iter().enumerate() {
            positives[g as usize] += yhat[row] as usize;
        }
        for (g, group) in partition.groups.iter().enumerate() {
            group_rates.push(GroupRateRow {
                feature: spec.name.clone(),
                group: group.label.clone(),
                size: group.size,
                opr: if group.size == 0 {
                    0.0
                } else {
                    positives[g] as f64 / group.size as f64
                },
            });
        }
    }

    let payload = AuditPayload {
        family: resolved.learner.family.as_str().to_string(),
        audit_rows: audit_split.rows(),
        outcome,
        group_rates,
    };

    resolved.ensure_out_dir()?;
    write_report(&resolved.out.join("audit.json"), ReportKind::Audit, &payload)?;
    match resolved.format {
        FormatArg::Text => print!("{}", render_audit_text(&payload)),
        FormatArg::Csv => print!("{}", render_audit_csv(&payload)?),
    }
    Ok(())
}

fn cmd_correct(args: CorrectArgs) -> CliResult<()> {
    let resolved = resolve(&args.common)?;
    let feature = resolved
        .audit_config
        .features
        .iter()
        .find(|f| f.name == args.feature)
        .cloned()
        .ok_or_else(|| {
            config_error(format!(
                "feature '{}' is not in the audit scan set ({})",
                args.feature,
                resolved
                    .audit_config
                    .features
                    .iter()
                    .map(|f| f.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?;

    let (train, audit_split) = resolved.split()?;
    let baseline = resolved.train_baseline(&train)?;

    // A clean scan is not an error: correcting an already-balanced
    // feature is allowed, just worth flagging.
    let outcome = detect_alerts(&baseline, &audit_split, &resolved.audit_config)?;
    if !outcome.alerts.iter().any(|a| a.feature == feature.name) {
        println!(
            "note: no disparity alert on '{}' at {}:1; gaps are already small, proceeding anyway",
            feature.name, resolved.audit_config.ratio_threshold
        );
    }

    let payload = match args.method {
        MethodArg::Fairdream => {
            let run = run_fairdream(
                &baseline,
                &train,
                &audit_split,
                &feature,
                resolved.objective,
                resolved.candidates,
                resolved.alpha,
                &resolved.learner,
            )?;
            resolved.ensure_out_dir()?;
            run.best_fitted().save(&resolved.out.join("model.json"))?;
            correction_payload_from_fairdream(&run)
        }
        MethodArg::Gridsearch => {
            let run = run_gridsearch(
                &train,
                &audit_split,
                &feature,
                resolved.objective,
                resolved.grid_size,
                resolved.lambda_bound,
                resolved.eta,
                &resolved.learner,
            )?;
            // The sweep's report compares against the baseline at its own
            // F1 threshold on the audit split.
            let base_scores = baseline.scores(&audit_split)?;
            let baseline_stat = roc_auc(audit_split.target(), &base_scores)?;
            let (threshold, _) = best_f1_threshold(audit_split.target(), &base_scores)?;
            let base_yhat = classify(&base_scores, threshold);
            let partition = feature.build(&train)?;
            let assignment = partition.project(&audit_split)?;
            let baseline_report = group_report_projected(
                audit_split.target(),
                &base_yhat,
                &partition,
                &assignment,
            )?;
            resolved.ensure_out_dir()?;
            run.best_fitted().save(&resolved.out.join("model.json"))?;
            correction_payload_from_gridsearch(&run, baseline_stat, &baseline_report)
        }
    };

    write_report(
        &resolved.out.join("correction.json"),
        ReportKind::Correction,
        &payload,
    )?;
    match resolved.format {
        FormatArg::Text => print!("{}", render_correction_text(&payload)),
        FormatArg::Csv => print!("{}", render_correction_csv(&payload)?),
    }
    Ok(())
}

fn cmd_benchmark(args: BenchmarkArgs) -> CliResult<()> {
    let resolved = resolve(&args.common)?;
    let families: Vec<LearnerFamily> = match (&args.families, &resolved.config.benchmark.families)
    {
        (Some(flags), _) => flags.iter().map(|&f| f.into()).collect(),
        (None, Some(cfg)) => cfg.clone(),
        (None, None) => LearnerFamily::ALL.to_vec(),
    };

    let mut config = BenchmarkConfig::desk(resolved.seed);
    config.split_fraction = resolved.split_fraction;
    config.alert_ratio = resolved.audit_config.ratio_threshold;
    config.lambda_bound = resolved.lambda_bound;
    config.eta = resolved.eta;
    config.alpha = resolved.alpha;
    let section = &resolved.config.benchmark;
    config.full_scale = args.full_scale || section.full_scale.unwrap_or(false);
    if let Some(v) = section.sample_rows {
        config.sample_rows = v;
    }
    if let Some(v) = section.models_per_method {
        config.models_per_method = v;
    }
    if let Some(v) = section.calibration_bins {
        config.calibration_bins = v;
    }

    let run = run_benchmark(
        &resolved.table,
        &families,
        &resolved.audit_config.features,
        &config,
    )?;
    resolved.ensure_out_dir()?;
    let files = emit_report(&run, &resolved.out)?;
    match resolved.format {
        FormatArg::Text => print!("{}", render_benchmark_text(&run)),
        FormatArg::Csv => print!("{}", render_benchmark_csv(&run)?),
    }
    println!("wrote {} files under {}", files.len(), resolved.out.display());
    Ok(())
}

fn cmd_report(args: ReportArgs) -> CliResult<()> {
    if !args.input.is_file() {
        return Err(config_error(format!(
            "report {} does not exist",
            args.input.display()
        )));
    }
    let envelope = read_report(&args.input)?;
    let rendering = match envelope.kind {
        ReportKind::Audit => {
            let payload: AuditPayload = serde_json::from_value(envelope.payload)
                .map_err(|e| CliError::Runtime(Error::Format(format!("bad audit payload: {e}"))))?;
            match args.format {
                FormatArg::Text => render_audit_text(&payload),
                FormatArg::Csv => render_audit_csv(&payload)?,
            }
        }
        ReportKind::Correction => {
            let payload = serde_json::from_value(envelope.payload).map_err(|e| {
                CliError::Runtime(Error::Format(format!("bad correction payload: {e}")))
            })?;
            match args.format {
                FormatArg::Text => render_correction_text(&payload),
                FormatArg::Csv => render_correction_csv(&payload)?,
            }
        }
        ReportKind::Benchmark => {
            let run: BenchmarkRun = serde_json::from_value(envelope.payload).map_err(|e| {
                CliError::Runtime(Error::Format(format!("bad benchmark payload: {e}")))
            })?;
            match args.format {
                FormatArg::Text => render_benchmark_text(&run),
                FormatArg::Csv => render_benchmark_csv(&run)?,
            }
        }
    };
    print!("{rendering}");
    if let Some(out) = &args.out {
        fs::write(out, &rendering).map_err(|e| CliError::Runtime(Error::io(out, e)))?;
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> CliResult<()> {
    let table = synth::generate(args.rows, args.seed)?;
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::Runtime(Error::io(parent, e)))?;
        }
    }
    synth::write_csv(&table, &args.out)?;
    println!(
        "wrote {} rows to {} (schema: schemas/adult_census.toml)",
        table.rows(),
        args.out.display()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_rejects_unknown_keys() {
        let err = toml::from_str::<RunConfig>("verbose = true").unwrap_err();
        assert!(err.to_string().contains("verbose"));
    }

    #[test]
    fn config_parses_every_section() {
        let config: RunConfig = toml::from_str(
            r#"
            data = "census.csv"
            schema = "schemas/adult_census.toml"
            seed = 7
            split_fraction = 0.3
            out = "reports"
            format = "text"

            [learner]
            family = "gbdt"
            n_estimators = 200

            [audit]
            ratio_threshold = 3.0
            [[audit.feature]]
            name = "age"
            edges = [17.0, 29.0, 37.0, 91.0]
            [[audit.feature]]
            name = "sex"

            [correct]
            objective = "demographic_parity"
            candidates = 10

            [benchmark]
            families = ["gbdt", "logistic"]
            sample_rows = 5000
            "#,
        )
        .unwrap();
        assert_eq!(config.seed, Some(7));
        assert_eq!(config.learner.family, Some(LearnerFamily::Gbdt));
        assert_eq!(config.audit.features.len(), 2);
        assert_eq!(config.audit.features[0].name, "age");
        assert_eq!(
            config.benchmark.families,
            Some(vec![LearnerFamily::Gbdt, LearnerFamily::Logistic])
        );
    }

    #[test]
    fn flag_style_errors_classify_as_config() {
        let cli = CliError::from(Error::InvalidArgument("x".into()));
        assert!(matches!(cli, CliError::Config(_)));
        let cli = CliError::from(Error::Training("y".into()));
        assert!(matches!(cli, CliError::Runtime(_)));
    }
}
