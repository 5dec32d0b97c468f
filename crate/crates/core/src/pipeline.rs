//! Table-in, scores-out model fitting.
//!
//! The learners operate on [`EncodedMatrix`] values; everything above them
//! (audit, corrections, benchmark, CLI) operates on [`DataTable`]s. A
//! [`FittedModel`] pairs a trained model with the encoder that produced its
//! feature matrix, so any schema-compatible table can be scored later —
//! including tables with categories never seen during training.
//!
//! Each learner family picks its natural encoding: tree ensembles consume
//! ordinal codes, the linear model consumes standardized one-hot features.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::{encode, DataTable, EncodeMode, EncodedMatrix, Encoder};
use crate::error::{Error, Result};
use crate::learners::{train, LearnerConfig, LearnerFamily, SampleWeights, TrainedModel};

/// On-disk format tag for serialized fitted models.
pub const FITTED_FORMAT: &str = "fairdream-fitted-model";
/// Bumped when the serialized layout changes incompatibly.
pub const FITTED_VERSION: u32 = 1;

/// Which encoding a learner family trains on.
pub fn encode_mode_for(family: LearnerFamily) -> EncodeMode {
    match family {
        LearnerFamily::Gbdt | LearnerFamily::RandomForest => EncodeMode::Tree,
        LearnerFamily::Logistic => EncodeMode::Linear,
    }
}

/// A trained model together with its fitted feature encoding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FittedModel {
    encoder: Encoder,
    model: TrainedModel,
}

#[derive(Serialize, Deserialize)]
struct FittedEnvelope {
    format: String,
    version: u32,
    fitted: FittedModel,
}

impl FittedModel {
    /// Encode `table` for `config.family`, then train on it with `weights`.
    pub fn train(
        table: &DataTable,
        config: &LearnerConfig,
        weights: &SampleWeights,
    ) -> Result<FittedModel> {
        let (encoder, matrix) = encode(table, encode_mode_for(config.family))?;
        let model = train(&matrix, weights, config)?;
        Ok(FittedModel { encoder, model })
    }

    /// Train on an already-encoded matrix, reusing a fitted encoder.
    ///
    /// The corrections retrain many models on the same feature matrix (with
    /// different weights or relabeled targets); encoding once and calling
    /// this avoids redundant passes over the table.
    pub fn from_parts(encoder: Encoder, model: TrainedModel) -> FittedModel {
        FittedModel { encoder, model }
    }

    pub fn model(&self) -> &TrainedModel {
        &self.model
    }

    pub fn encoder(&self) -> &Encoder {
        &self.encoder
    }

    /// Score every row of a schema-compatible table.
    pub fn scores(&self, table: &DataTable) -> Result<Vec<f64>> {
        let matrix = self.encoder.transform(table)?;
        self.model.predict_scores(&matrix)
    }

    /// Score an already-encoded matrix (must come from this encoder).
    pub fn scores_encoded(&self, matrix: &EncodedMatrix) -> Result<Vec<f64>> {
        self.model.predict_scores(matrix)
    }

    /// Write the model and its encoder as one versioned JSON document.
    pub fn save(&self, path: &Path) -> Result<()> {
        let envelope = FittedEnvelope {
            format: FITTED_FORMAT.to_string(),
            version: FITTED_VERSION,
            fitted: self.clone(),
        };
        let text = serde_json::to_string_pretty(&envelope)
            .map_err(|e| Error::Format(format!("cannot serialize fitted model: {e}")))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))?;
        Ok(())
    }

    /// Read a fitted model written by [`FittedModel::save`].
    pub fn load(path: &Path) -> Result<FittedModel> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let envelope: FittedEnvelope = serde_json::from_str(&text)
            .map_err(|e| Error::Format(format!("cannot parse fitted model: {e}")))?;
        if envelope.format != FITTED_FORMAT {
            return Err(Error::Format(format!(
                "expected format '{FITTED_FORMAT}', found '{}'",
                envelope.format
            )));
        }
        if envelope.version != FITTED_VERSION {
            return Err(Error::Format(format!(
                "unsupported fitted-model version {} (this build reads {FITTED_VERSION})",
                envelope.version
            )));
        }
        Ok(envelope.fitted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::synth::generate;

    fn small_table() -> DataTable {
        generate(400, 7).unwrap()
    }

    fn quick_config(family: LearnerFamily) -> LearnerConfig {
        let mut config = LearnerConfig::new(family);
        config.n_estimators = match family {
            LearnerFamily::RandomForest => 25,
            _ => 40,
        };
        config.tolerance = 1e-6;
        config
    }

    #[test]
    fn every_family_trains_and_scores_in_range() {
        let table = small_table();
        let weights = SampleWeights::uniform(table.rows());
        for family in LearnerFamily::ALL {
            let fitted = FittedModel::train(&table, &quick_config(family), &weights).unwrap();
            let scores = fitted.scores(&table).unwrap();
            assert_eq!(scores.len(), table.rows());
            assert!(
                scores.iter().all(|s| (0.0..=1.0).contains(s)),
                "{family} produced out-of-range scores"
            );
        }
    }

    #[test]
    fn save_load_round_trip_scores_identically() {
        let table = small_table();
        let weights = SampleWeights::uniform(table.rows());
        let fitted =
            FittedModel::train(&table, &quick_config(LearnerFamily::Gbdt), &weights).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        fitted.save(&path).unwrap();
        let restored = FittedModel::load(&path).unwrap();
        assert_eq!(
            fitted.scores(&table).unwrap(),
            restored.scores(&table).unwrap()
        );
    }

    #[test]
    fn scoring_is_deterministic_across_refits() {
        let table = small_table();
        let weights = SampleWeights::uniform(table.rows());
        let config = quick_config(LearnerFamily::RandomForest);
        let a = FittedModel::train(&table, &config, &weights).unwrap();
        let b = FittedModel::train(&table, &config, &weights).unwrap();
        assert_eq!(a.scores(&table).unwrap(), b.scores(&table).unwrap());
    }

    #[test]
    fn tampered_version_is_rejected() {
        let table = small_table();
        let weights = SampleWeights::uniform(table.rows());
        let fitted =
            FittedModel::train(&table, &quick_config(LearnerFamily::Logistic), &weights).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        fitted.save(&path).unwrap();
        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replace("\"version\": 1", "\"version\": 99");
        std::fs::write(&path, text).unwrap();
        assert!(FittedModel::load(&path).is_err());
    }
}
