//! The decision-tree structure shared by the boosted and bagged ensembles.

use serde::{Deserialize, Serialize};

use crate::dataset::EncodedMatrix;

/// A binary decision tree stored as a flat node arena (root at index 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct Tree {
    pub nodes: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub(crate) enum Node {
    /// Rows with `value < threshold` descend left, the rest right.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

impl Tree {
    /// Evaluate the tree on one matrix row.
    pub fn predict_row(&self, x: &EncodedMatrix, row: usize) -> f64 {
        let mut at = 0usize;
        loop {
            match self.nodes[at] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x.value(row, feature) < threshold {
                        left
                    } else {
                        right
                    };
                }
                Node::Leaf { value } => return value,
            }
        }
    }
}
