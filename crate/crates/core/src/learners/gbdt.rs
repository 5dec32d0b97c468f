//! Gradient-boosted trees on weighted logistic loss.
//!
//! Every boosting round fits a depth-limited tree to the second-order
//! expansion of the loss at the current margins: per-row gradients
//! `g = w·(p − y)` and curvatures `h = w·p·(1 − p)` carry the sample
//! weights, splits are scored from per-bin histograms of (g, h), and each
//! leaf applies the damped Newton step `−lr·G/(H + l2)`.

use serde::{Deserialize, Serialize};

use crate::dataset::EncodedMatrix;
use crate::error::{Error, Result};
use crate::learners::config::LearnerConfig;
use crate::learners::quantize::BinnedMatrix;
use crate::learners::tree::{Node, Tree};
use crate::learners::{sigmoid, softplus};

/// Gains at or below this are treated as no improvement.
const MIN_SPLIT_GAIN: f64 = 1e-12;

/// A fitted boosted-tree ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtModel {
    init_margin: f64,
    n_features: usize,
    trees: Vec<Tree>,
    train_loss: Vec<f64>,
}

impl GbdtModel {
    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    /// Weighted mean log-loss on the training rows: entry 0 is the loss at
    /// the initial margin, entry r the loss after boosting round r.
    pub fn train_loss(&self) -> &[f64] {
        &self.train_loss
    }

    pub fn predict_scores(&self, x: &EncodedMatrix) -> Result<Vec<f64>> {
        if x.n_cols() != self.n_features {
            return Err(Error::Shape(format!(
                "matrix has {} feature columns, model was trained on {}",
                x.n_cols(),
                self.n_features
            )));
        }
        Ok((0..x.n_rows())
            .map(|r| {
                let margin: f64 = self.init_margin
                    + self.trees.iter().map(|t| t.predict_row(x, r)).sum::<f64>();
                sigmoid(margin)
            })
            .collect())
    }
}

pub(crate) fn train_gbdt(x: &EncodedMatrix, w: &[f64], config: &LearnerConfig) -> Result<GbdtModel> {
    let y = x.target();
    let n = x.n_rows();
    let sum_w: f64 = w.iter().sum();
    let pos_w: f64 = w
        .iter()
        .zip(y)
        .filter(|&(_, &yi)| yi == 1)
        .map(|(&wi, _)| wi)
        .sum();
    let p0 = pos_w / sum_w;
    let init_margin = (p0 / (1.0 - p0)).ln();

    let binned = BinnedMatrix::build(x, w);
    let mut margins = vec![init_margin; n];
    let mut g = vec![0.0f64; n];
    let mut h = vec![0.0f64; n];
    let mut train_loss = Vec::with_capacity(config.n_estimators + 1);
    train_loss.push(mean_log_loss(&margins, y, w, sum_w));

    let mut trees = Vec::with_capacity(config.n_estimators);
    for _ in 0..config.n_estimators {
        for i in 0..n {
            let p = sigmoid(margins[i]);
            g[i] = w[i] * (p - f64::from(y[i]));
            h[i] = w[i] * p * (1.0 - p);
        }
        let mut builder = TreeBuilder {
            binned: &binned,
            g: &g,
            h: &h,
            l2: config.l2_penalty,
            shrinkage: config.learning_rate,
            max_depth: config.max_depth,
            nodes: Vec::new(),
            margins: &mut margins,
        };
        let all_rows: Vec<u32> = (0..n as u32).collect();
        builder.build(all_rows, 0);
        trees.push(Tree {
            nodes: builder.nodes,
        });
        train_loss.push(mean_log_loss(&margins, y, w, sum_w));
    }

    Ok(GbdtModel {
        init_margin,
        n_features: x.n_cols(),
        trees,
        train_loss,
    })
}

/// Weighted mean logistic loss of margin scores.
fn mean_log_loss(margins: &[f64], y: &[u8], w: &[f64], sum_w: f64) -> f64 {
    let total: f64 = margins
        .iter()
        .zip(y)
        .zip(w)
        .map(|((&m, &yi), &wi)| wi * (softplus(m) - f64::from(yi) * m))
        .sum();
    total / sum_w
}

struct TreeBuilder<'a> {
    binned: &'a BinnedMatrix,
    g: &'a [f64],
    h: &'a [f64],
    l2: f64,
    shrinkage: f64,
    max_depth: usize,
    nodes: Vec<Node>,
    /// Updated in place as leaves are finalized.
    margins: &'a mut [f64],
}

struct BestSplit {
    gain: f64,
    feature: usize,
    /// Split at `cuts[feature][cut]`: bins `0..=cut` go left.
    cut: usize,
}

impl TreeBuilder<'_> {
    /// Grow the subtree for `rows`, returning its node index.
    fn build(&mut self, rows: Vec<u32>, depth: usize) -> usize {
        let (node_g, node_h) = rows.iter().fold((0.0, 0.0), |(sg, sh), &r| {
            (sg + self.g[r as usize], sh + self.h[r as usize])
        });

        let split = if depth < self.max_depth {
            self.best_split(&rows, node_g, node_h)
        } else {
            None
        };
        let Some(split) = split else {
            return self.emit_leaf(&rows, node_g, node_h);
        };

        let bins = self.binned.bins(split.feature);
        let threshold = self.binned.cuts(split.feature)[split.cut];
        let (left_rows, right_rows): (Vec<u32>, Vec<u32>) = rows
            .into_iter()
            .partition(|&r| (bins[r as usize] as usize) <= split.cut);

        let at = self.nodes.len();
        // Placeholder so children can be appended after this node.
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

    fn emit_leaf(&mut self, rows: &[u32], node_g: f64, node_h: f64) -> usize {
        let denom = node_h + self.l2;
        let value = if denom > 0.0 {
            -self.shrinkage * node_g / denom
        } else {
            0.0
        };
        for &r in rows {
            self.margins[r as usize] += value;
        }
        let at = self.nodes.len();
        self.nodes.push(Node::Leaf { value });
        at
    }

    /// Highest-gain (feature, cut) over all binned candidates, or None when
    /// nothing improves on the unsplit node. Ties keep the first candidate
    /// in (feature, cut) order.
    fn best_split(&self, rows: &[u32], node_g: f64, node_h: f64) -> Option<BestSplit> {
        let parent_score = score(node_g, node_h, self.l2);
        let mut best: Option<BestSplit> = None;
        let mut hist: Vec<(f64, f64, u32)> = Vec::new();

        for f in 0..self.binned.n_features() {
            let n_cuts = self.binned.cuts(f).len();
            if n_cuts == 0 {
                continue;
            }
            hist.clear();
            hist.resize(self.binned.n_bins(f), (0.0, 0.0, 0));
            let bins = self.binned.bins(f);
            for &r in rows {
                let slot = &mut hist[bins[r as usize] as usize];
                slot.0 += self.g[r as usize];
                slot.1 += self.h[r as usize];
                slot.2 += 1;
            }

            let total_count = rows.len() as u32;
            let (mut left_g, mut left_h, mut left_count) = (0.0, 0.0, 0u32);
            for cut in 0..n_cuts {
                let (bg, bh, bc) = hist[cut];
                left_g += bg;
                left_h += bh;
                left_count += bc;
                if left_count == 0 || left_count == total_count {
                    continue;
                }
                let right_g = node_g - left_g;
                let right_h = node_h - left_h;
                let gain =
                    score(left_g, left_h, self.l2) + score(right_g, right_h, self.l2) - parent_score;
                if gain > MIN_SPLIT_GAIN && best.as_ref().map_or(true, |b| gain > b.gain) {
                    best = Some(BestSplit { gain, feature: f, cut });
                }
            }
        }
        best
    }
}

/// Structure score G²/(H + l2) of a node; higher is better.
fn score(g: f64, h: f64, l2: f64) -> f64 {
    let denom = h + l2;
    if denom > 0.0 {
        g * g / denom
    } else {
        0.0
    }
}
