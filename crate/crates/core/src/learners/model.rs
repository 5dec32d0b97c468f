//! The family-agnostic training entry point and fitted-model container.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::EncodedMatrix;
use crate::error::{Error, Result};
use crate::learners::config::{LearnerConfig, LearnerFamily, SampleWeights};
use crate::learners::forest::{train_forest, ForestModel};
use crate::learners::gbdt::{train_gbdt, GbdtModel};
use crate::learners::logistic::{train_logistic, LogisticModel};

/// Identifier written into every serialized model file.
pub const MODEL_FORMAT: &str = "fairdream-model";
/// Bumped whenever the serialized layout changes incompatibly.
pub const MODEL_VERSION: u32 = 1;

/// Everything recorded about a training run besides the parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub config: LearnerConfig,
    pub n_rows: usize,
    /// Checksum of the exact training weights (order-sensitive).
    pub weight_digest: String,
}

/// Fitted parameters, tagged by family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum ModelParams {
    Gbdt(GbdtModel),
    RandomForest(ForestModel),
    Logistic(LogisticModel),
}

/// A trained classifier plus its training metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub meta: TrainMeta,
    pub params: ModelParams,
}

impl TrainedModel {
    pub fn family(&self) -> LearnerFamily {
        match &self.params {
            ModelParams::Gbdt(_) => LearnerFamily::Gbdt,
            ModelParams::RandomForest(_) => LearnerFamily::RandomForest,
            ModelParams::Logistic(_) => LearnerFamily::Logistic,
        }
    }

    /// Probability-like scores in [0, 1], one per row.
    pub fn predict_scores(&self, x: &EncodedMatrix) -> Result<Vec<f64>> {
        match &self.params {
            ModelParams::Gbdt(m) => m.predict_scores(x),
            ModelParams::RandomForest(m) => m.predict_scores(x),
            ModelParams::Logistic(m) => m.predict_scores(x),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        save_model(self, path)
    }
}

/// Train one model of the configured family.
///
/// Training data must be non-empty and carry positive weight on both
/// classes; features must be finite.
pub fn train(x: &EncodedMatrix, w: &SampleWeights, config: &LearnerConfig) -> Result<TrainedModel> {
    config.validate()?;
    if x.n_rows() == 0 {
        return Err(Error::Training("cannot train on an empty matrix".into()));
    }
    if w.len() != x.n_rows() {
        return Err(Error::Shape(format!(
            "{} sample weights for {} rows",
            w.len(),
            x.n_rows()
        )));
    }
    for j in 0..x.n_cols() {
        if let Some(bad) = x.col(j).iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite value {bad} in feature column '{}'",
                x.col_names()[j]
            )));
        }
    }
    let weights = w.as_slice();
    let (mut pos_w, mut neg_w) = (0.0f64, 0.0f64);
    for (&wi, &yi) in weights.iter().zip(x.target()) {
        if yi == 1 {
            pos_w += wi;
        } else {
            neg_w += wi;
        }
    }
    if pos_w <= 0.0 || neg_w <= 0.0 {
        return Err(Error::Training(format!(
            "training data is single-class under the given weights \
             (positive mass {pos_w}, negative mass {neg_w})"
        )));
    }

    let params = match config.family {
        LearnerFamily::Gbdt => ModelParams::Gbdt(train_gbdt(x, weights, config)?),
        LearnerFamily::RandomForest => ModelParams::RandomForest(train_forest(x, weights, config)?),
        LearnerFamily::Logistic => ModelParams::Logistic(train_logistic(x, weights, config)?),
    };
    Ok(TrainedModel {
        meta: TrainMeta {
            config: config.clone(),
            n_rows: x.n_rows(),
            weight_digest: weight_digest(weights),
        },
        params,
    })
}

/// Threshold scores into hard predictions: 1 iff score ≥ threshold.
pub fn classify(scores: &[f64], threshold: f64) -> Vec<u8> {
    scores.iter().map(|&s| u8::from(s >= threshold)).collect()
}

#[derive(Serialize, Deserialize)]
struct ModelEnvelope {
    format: String,
    version: u32,
    model: TrainedModel,
}

/// Write a model as a self-describing, versioned JSON file. Floating-point
/// values round-trip exactly.
pub fn save_model(model: &TrainedModel, path: &Path) -> Result<()> {
    let envelope = ModelEnvelope {
        format: MODEL_FORMAT.to_string(),
        version: MODEL_VERSION,
        model: model.clone(),
    };
    let json = serde_json::to_string(&envelope)
        .map_err(|e| Error::Format(format!("model serialization failed: {e}")))?;
    fs::write(path, json).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<TrainedModel> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let envelope: ModelEnvelope = serde_json::from_str(&raw)
        .map_err(|e| Error::Format(format!("{} is not a model file: {e}", path.display())))?;
    if envelope.format != MODEL_FORMAT {
        return Err(Error::Format(format!(
            "expected format '{MODEL_FORMAT}', found '{}'",
            envelope.format
        )));
    }
    if envelope.version != MODEL_VERSION {
        return Err(Error::Format(format!(
            "unsupported model version {} (this build reads version {MODEL_VERSION})",
            envelope.version
        )));
    }
    Ok(envelope.model)
}

/// Order-sensitive FNV-1a checksum over the bit patterns of the weights.
fn weight_digest(w: &[f64]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &value in w {
        for byte in value.to_bits().to_le_bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    format!("{hash:016x}")
}
