//! Random forest with weighted bootstrap resampling.
//!
//! Sample weights enter through the bootstrap: each tree draws rows with
//! probability proportional to weight, so an integer-weighted row behaves
//! like that many copies in expectation. Trees are grown on Gini gain with
//! a fresh feature subsample (√d, rounded up) at every node, and each tree
//! votes a hard class label; the model's score for a row is the fraction of
//! trees voting positive.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::EncodedMatrix;
use crate::error::{Error, Result};
use crate::learners::config::LearnerConfig;
use crate::learners::quantize::BinnedMatrix;
use crate::learners::tree::{Node, Tree};

const MIN_SPLIT_GAIN: f64 = 1e-12;

/// A fitted forest; every tree's leaves hold hard votes (0.0 or 1.0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    n_features: usize,
    trees: Vec<Tree>,
}

impl ForestModel {
    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    /// Fraction of trees voting positive, per row.
    pub fn predict_scores(&self, x: &EncodedMatrix) -> Result<Vec<f64>> {
        if x.n_cols() != self.n_features {
            return Err(Error::Shape(format!(
                "matrix has {} feature columns, model was trained on {}",
                x.n_cols(),
                self.n_features
            )));
        }
        let n_trees = self.trees.len() as f64;
        Ok((0..x.n_rows())
            .map(|r| {
                let votes: f64 = self.trees.iter().map(|t| t.predict_row(x, r)).sum();
                votes / n_trees
            })
            .collect())
    }
}

pub(crate) fn train_forest(
    x: &EncodedMatrix,
    w: &[f64],
    config: &LearnerConfig,
) -> Result<ForestModel> {
    let n = x.n_rows();
    let binned = BinnedMatrix::build(x, w);
    let n_features = x.n_cols();
    let mtry = ((n_features as f64).sqrt().ceil() as usize).clamp(1, n_features);
    let sampler = WeightedIndex::new(w)
        .map_err(|e| Error::InvalidArgument(format!("unusable bootstrap weights: {e}")))?;

    // Each tree runs on its own counter stream of one seeded generator, so
    // the forest is reproducible and trees stay independent.
    let base_rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut trees = Vec::with_capacity(config.n_estimators);
    for t in 0..config.n_estimators {
        let mut rng = base_rng.clone();
        rng.set_stream(t as u64 + 1);

        // Bootstrap multiplicities: n weighted draws with replacement.
        let mut multiplicity = vec![0u32; n];
        for _ in 0..n {
            multiplicity[sampler.sample(&mut rng)] += 1;
        }
        let rows: Vec<u32> = (0..n as u32)
            .filter(|&r| multiplicity[r as usize] > 0)
            .collect();

        let mut builder = ForestTreeBuilder {
            binned: &binned,
            y: x.target(),
            multiplicity: &multiplicity,
            max_depth: config.max_depth,
            mtry,
            rng: &mut rng,
            nodes: Vec::new(),
        };
        builder.build(rows, 0);
        trees.push(Tree {
            nodes: builder.nodes,
        });
    }

    Ok(ForestModel { n_features, trees })
}

struct ForestTreeBuilder<'a> {
    binned: &'a BinnedMatrix,
    y: &'a [u8],
    /// Bootstrap copy count per original row.
    multiplicity: &'a [u32],
    max_depth: usize,
    mtry: usize,
    rng: &'a mut ChaCha12Rng,
    nodes: Vec<Node>,
}

struct BestSplit {
    gain: f64,
    feature: usize,
    cut: usize,
}

impl ForestTreeBuilder<'_> {
    fn build(&mut self, rows: Vec<u32>, depth: usize) -> usize {
        let (pos, total) = self.class_mass(&rows);
        let split = if depth < self.max_depth && pos > 0.0 && pos < total {
            self.best_split(&rows, pos, total)
        } else {
            None
        };
        let Some(split) = split else {
            // Strict majority votes positive; a tied leaf votes negative.
            let vote = f64::from(2.0 * pos > total);
            let at = self.nodes.len();
            self.nodes.push(Node::Leaf { value: vote });
            return at;
        };

        let bins = self.binned.bins(split.feature);
        let threshold = self.binned.cuts(split.feature)[split.cut];
        let (left_rows, right_rows): (Vec<u32>, Vec<u32>) = rows
            .into_iter()
            .partition(|&r| (bins[r as usize] as usize) <= split.cut);

        let at = self.nodes.len();
        self.nodes.push(Node::Leaf { value: 0.0 });
        let left = self.build(left_rows, depth + 1);
        let right = self.build(right_rows, depth + 1);
        self.nodes[at] = Node::Split {
            feature: split.feature,
            threshold,
            left,
            right,
        };
        at
    }

    /// Bootstrap-weighted (positive mass, total mass) of a row set.
    fn class_mass(&self, rows: &[u32]) -> (f64, f64) {
        rows.iter().fold((0.0, 0.0), |(pos, total), &r| {
            let m = f64::from(self.multiplicity[r as usize]);
            (pos + m * f64::from(self.y[r as usize]), total + m)
        })
    }

    /// Best Gini-gain split over a fresh feature subsample.
    fn best_split(&mut self, rows: &[u32], node_pos: f64, node_total: f64) -> Option<BestSplit> {
        let features = self.sample_features();
        let parent_impurity = gini(node_pos, node_total);
        let mut best: Option<BestSplit> = None;
        let mut hist: Vec<(f64, f64)> = Vec::new();

        for f in features {
            let n_cuts = self.binned.cuts(f).len();
            if n_cuts == 0 {
                continue;
            }
            hist.clear();
            hist.resize(self.binned.n_bins(f), (0.0, 0.0));
            let bins = self.binned.bins(f);
            for &r in rows {
                let m = f64::from(self.multiplicity[r as usize]);
                let slot = &mut hist[bins[r as usize] as usize];
                slot.0 += m * f64::from(self.y[r as usize]);
                slot.1 += m;
            }

            let (mut left_pos, mut left_total) = (0.0, 0.0);
            for cut in 0..n_cuts {
                let (bp, bt) = hist[cut];
                left_pos += bp;
                left_total += bt;
                let right_pos = node_pos - left_pos;
                let right_total = node_total - left_total;
                if left_total <= 0.0 || right_total <= 0.0 {
                    continue;
                }
                let children = (left_total * gini(left_pos, left_total)
                    + right_total * gini(right_pos, right_total))
                    / node_total;
                let gain = parent_impurity - children;
                if gain > MIN_SPLIT_GAIN && best.as_ref().map_or(true, |b| gain > b.gain) {
                    best = Some(BestSplit { gain, feature: f, cut });
                }
            }
        }
        best
    }

    /// `mtry` distinct feature indices, sorted so candidate scan order (and
    /// therefore tie-breaking) is stable.
    fn sample_features(&mut self) -> Vec<usize> {
        let d = self.binned.n_features();
        let mut idx: Vec<usize> = (0..d).collect();
        for i in 0..self.mtry {
            let j = self.rng.random_range(i..d);
            idx.swap(i, j);
        }
        idx.truncate(self.mtry);
        idx.sort_unstable();
        idx
    }
}

fn gini(pos: f64, total: f64) -> f64 {
    let p = pos / total;
    2.0 * p * (1.0 - p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::config::LearnerFamily;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn config(n_estimators: usize, seed: u64) -> LearnerConfig {
        let mut c = LearnerConfig::new(LearnerFamily::RandomForest);
        c.n_estimators = n_estimators;
        c.seed = seed;
        c
    }

    fn separable(n: usize, seed: u64) -> EncodedMatrix {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let signal: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let noise: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let y: Vec<u8> = signal.iter().map(|&v| u8::from(v > 0.5)).collect();
        EncodedMatrix::from_columns(
            vec!["signal".into(), "noise".into()],
            vec![signal, noise],
            y,
        )
        .unwrap()
    }

    #[test]
    fn same_seed_reproduces_same_scores() {
        let x = separable(300, 8);
        let w = vec![1.0; 300];
        let a = train_forest(&x, &w, &config(20, 5)).unwrap();
        let b = train_forest(&x, &w, &config(20, 5)).unwrap();
        assert_eq!(a.predict_scores(&x).unwrap(), b.predict_scores(&x).unwrap());
    }

    #[test]
    fn scores_are_vote_fractions() {
        let x = separable(200, 13);
        let model = train_forest(&x, &vec![1.0; 200], &config(25, 1)).unwrap();
        for s in model.predict_scores(&x).unwrap() {
            assert!((0.0..=1.0).contains(&s));
            let votes = s * 25.0;
            assert!((votes - votes.round()).abs() < 1e-9, "score {s}");
        }
    }

    #[test]
    fn learns_a_separable_signal() {
        let train = separable(600, 21);
        let test = separable(200, 22);
        let model = train_forest(&train, &vec![1.0; 600], &config(50, 2)).unwrap();
        let scores = model.predict_scores(&test).unwrap();
        let correct = scores
            .iter()
            .zip(test.target())
            .filter(|&(s, &y)| u8::from(*s >= 0.5) == y)
            .count();
        assert!(correct >= 190, "held-out accuracy {correct}/200");
    }

    #[test]
    fn zero_weight_rows_are_never_drawn() {
        // Two contradictory label clusters share x = 0; the cluster carrying
        // all the weight decides the prediction because zero-weight rows
        // cannot enter any bootstrap.
        let mut col = Vec::new();
        let mut y = Vec::new();
        let mut w = Vec::new();
        for _ in 0..30 {
            col.push(0.0);
            y.push(1);
            w.push(1.0);
        }
        for _ in 0..30 {
            col.push(0.0);
            y.push(0);
            w.push(0.0);
        }
        for _ in 0..30 {
            col.push(1.0);
            y.push(0);
            w.push(1.0);
        }
        let x = EncodedMatrix::from_columns(vec!["f".into()], vec![col], y).unwrap();
        let model = train_forest(&x, &w, &config(30, 3)).unwrap();
        let scores = model.predict_scores(&x).unwrap();
        assert!(scores[0] > 0.9, "score at x=0 was {}", scores[0]);
        assert!(scores[60] < 0.1, "score at x=1 was {}", scores[60]);
    }

    #[test]
    fn predict_shape_checked() {
        let x = separable(100, 4);
        let model = train_forest(&x, &vec![1.0; 100], &config(5, 0)).unwrap();
        let wide = EncodedMatrix::from_columns(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0], vec![0.0], vec![0.0]],
            vec![0],
        )
        .unwrap();
        assert!(model.predict_scores(&wide).is_err());
    }
}
