//! Learner families, their hyperparameters, and per-row training weights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The supported classifier families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnerFamily {
    /// Gradient-boosted decision trees on weighted logistic loss.
    Gbdt,
    /// Weighted-bootstrap random forest voting on class labels.
    RandomForest,
    /// L2-regularized logistic regression.
    Logistic,
}

impl LearnerFamily {
    pub const ALL: [LearnerFamily; 3] = [
        LearnerFamily::Gbdt,
        LearnerFamily::RandomForest,
        LearnerFamily::Logistic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LearnerFamily::Gbdt => "gbdt",
            LearnerFamily::RandomForest => "random_forest",
            LearnerFamily::Logistic => "logistic",
        }
    }
}

impl fmt::Display for LearnerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LearnerFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gbdt" => Ok(LearnerFamily::Gbdt),
            "random_forest" => Ok(LearnerFamily::RandomForest),
            "logistic" => Ok(LearnerFamily::Logistic),
            other => Err(Error::Config(format!(
                "unsupported learner family '{other}' (supported: gbdt, random_forest, logistic)"
            ))),
        }
    }
}

/// Hyperparameters for one model. Fields not used by a family are ignored
/// by it (e.g. `learning_rate` for the forest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearnerConfig {
    pub family: LearnerFamily,
    /// Boosting rounds / number of trees.
    pub n_estimators: usize,
    /// Maximum splits along any root-to-leaf path.
    pub max_depth: usize,
    /// Shrinkage applied to each boosting step.
    pub learning_rate: f64,
    /// L2 regularization strength.
    pub l2_penalty: f64,
    /// Iteration cap for the logistic solver.
    pub max_iterations: usize,
    /// Gradient-norm convergence threshold for the logistic solver.
    pub tolerance: f64,
    /// Seed for every random choice the learner makes.
    pub seed: u64,
}

impl LearnerConfig {
    /// Family defaults: 1000 boosting rounds at depth 3 with learning rate
    /// 0.1 for gbdt, 100 trees for the forest, and a 1e-8 gradient norm for
    /// the logistic solver.
    pub fn new(family: LearnerFamily) -> LearnerConfig {
        LearnerConfig {
            family,
            n_estimators: match family {
                LearnerFamily::RandomForest => 100,
                _ => 1000,
            },
            max_depth: 3,
            learning_rate: 0.1,
            l2_penalty: 1.0,
            max_iterations: 10_000,
            tolerance: 1e-8,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> LearnerConfig {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_estimators < 1 {
            return Err(Error::Config("n_estimators must be at least 1".into()));
        }
        if self.max_depth < 1 {
            return Err(Error::Config("max_depth must be at least 1".into()));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::Config(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.l2_penalty >= 0.0) {
            return Err(Error::Config(format!(
                "l2_penalty must be non-negative, got {}",
                self.l2_penalty
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Per-row training weights: non-negative, not all zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleWeights(Vec<f64>);

impl SampleWeights {
    pub fn new(weights: Vec<f64>) -> Result<SampleWeights> {
        let mut any_positive = false;
        for &w in &weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "sample weights must be finite and non-negative, found {w}"
                )));
            }
            any_positive |= w > 0.0;
        }
        if !any_positive {
            return Err(Error::InvalidArgument(
                "sample weights must include at least one positive entry".into(),
            ));
        }
        Ok(SampleWeights(weights))
    }

    /// Weight 1.0 for every row.
    pub fn uniform(n: usize) -> SampleWeights {
        SampleWeights(vec![1.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}
