//! Sample-weight-aware binary classifiers.
//!
//! Three families share one training interface: gradient-boosted trees,
//! a random forest, and logistic regression. All of them accept per-row
//! weights with duplication semantics — a row with integer weight k trains
//! like k copies of that row — which is what lets upstream reweighting
//! change what a model pays attention to without touching the data itself.
//!
//! Models are deterministic given `(data, weights, config, seed)`, produce
//! scores in [0, 1], and serialize to versioned JSON that round-trips
//! exactly.

mod config;
mod forest;
mod gbdt;
mod logistic;
mod model;
mod quantize;
mod tree;

pub use config::{LearnerConfig, LearnerFamily, SampleWeights};
pub use forest::ForestModel;
pub use gbdt::GbdtModel;
pub use logistic::LogisticModel;
pub use model::{
    classify, load_model, save_model, train, ModelParams, TrainMeta, TrainedModel, MODEL_FORMAT,
    MODEL_VERSION,
};

/// Numerically stable logistic function.
pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Numerically stable ln(1 + eᶻ).
pub(crate) fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigmoid_is_symmetric_and_bounded() {
        assert_eq!(sigmoid(0.0), 0.5);
        for z in [-700.0, -5.0, -0.3, 0.3, 5.0, 700.0] {
            let s = sigmoid(z);
            assert!((0.0..=1.0).contains(&s));
            assert!((s + sigmoid(-z) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn softplus_matches_naive_form_in_the_safe_range() {
        for z in [-20.0f64, -1.0, 0.0, 1.0, 20.0] {
            let naive = (1.0 + z.exp()).ln();
            assert!((softplus(z) - naive).abs() < 1e-12);
        }
        // And survives magnitudes where the naive form overflows.
        assert!(softplus(800.0).is_finite());
        assert!(softplus(-800.0) >= 0.0);
    }
}
