//! FairDream: fairness audit and in-processing correction for binary
//! classifiers on tabular data.
//!
//! The crate covers the full loop a practitioner runs when a deployed
//! classifier is suspected of treating demographic groups unevenly:
//!
//! 1. **Audit** — split the data, train a baseline model, partition each
//!    sensitive feature into groups, and raise [`audit::Alert`]s wherever the
//!    ratio of positive-prediction rates between groups crosses a threshold.
//! 2. **Correct** — retrain under an ascending schedule of group reweightings
//!    ([`fairdream::run_fairdream`]) and pick the candidate with the best
//!    accuracy/fairness trade-off, or run the Lagrangian grid-search
//!    reduction ([`gridsearch::run_gridsearch`]) as a comparison point.
//! 3. **Benchmark** — sweep learner families and sensitive features,
//!    collect per-group metric tables, and count which method wins each
//!    disparity column ([`benchmark::run_benchmark`]).
//!
//! Everything is deterministic given a seed: splits, bootstraps, weight
//! schedules, and reports reproduce byte-for-byte.

pub mod audit;
pub mod benchmark;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod fairdream;
pub mod gridsearch;
pub mod learners;
pub mod metrics;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
