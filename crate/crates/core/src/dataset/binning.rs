//! Group partitions over a sensitive feature.
//!
//! A partition assigns every row of its home table to exactly one group:
//! quantile bins or explicit interval edges for numeric features, category
//! identity for categorical ones. Partitions can be projected onto another
//! table drawn from the same population (e.g. built on the train split,
//! applied to the audit split).

use serde::{Deserialize, Serialize};

use crate::dataset::table::{ColumnData, DataTable};
use crate::error::{Error, Result};

/// Default number of quantile bins for numeric features.
pub const DEFAULT_QUANTILE_BINS: usize = 5;
/// Quantile bins smaller than this are merged into a neighbor.
pub const DEFAULT_MIN_GROUP_SIZE: usize = 50;

/// How to carve a feature into groups.
#[derive(Debug, Clone, PartialEq)]
pub enum BinStrategy {
    /// `k` near-equal-count bins on a numeric feature. Tied values can
    /// collapse adjacent edges; undersized bins are merged into a neighbor.
    Quantile { k: usize },
    /// Explicit ascending interval edges `[e0, e1, ..., ek]` producing bins
    /// `[e0,e1), [e1,e2), ..., [e_{k-1}, ek]`. Respected verbatim: no
    /// merging, and every observed value must fall inside `[e0, ek]`.
    Edges(Vec<f64>),
    /// One group per observed category of a categorical feature.
    Categories,
}

/// Membership rule for one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    /// `lo <= x < hi`, or `lo <= x <= hi` when `closed_right`.
    Interval { lo: f64, hi: f64, closed_right: bool },
    /// Exact category membership.
    Categories(Vec<String>),
}

/// One group of a partition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Group {
    pub label: String,
    pub spec: GroupSpec,
    /// Row count in the partition's home table.
    pub size: usize,
}

/// A complete, disjoint assignment of one table's rows to groups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupPartition {
    pub feature: String,
    pub groups: Vec<Group>,
    /// `assignment[row]` is the group index in the home table.
    pub assignment: Vec<u32>,
}

impl GroupPartition {
    pub fn n_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.groups.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.size).collect()
    }

    /// Assign rows of another table to this partition's groups.
    ///
    /// Numeric values outside the covered range clamp to the boundary
    /// groups; categories never seen by the partition map to `None` (the
    /// caller decides whether to skip or fail).
    pub fn project(&self, table: &DataTable) -> Result<Vec<Option<u32>>> {
        let column = table.column(&self.feature).ok_or_else(|| {
            Error::InvalidArgument(format!("table has no column '{}'", self.feature))
        })?;
        match &column.data {
            ColumnData::Numeric(values) => {
                if !matches!(self.groups[0].spec, GroupSpec::Interval { .. }) {
                    return Err(Error::InvalidArgument(format!(
                        "partition on '{}' is categorical but the column is numeric",
                        self.feature
                    )));
                }
                Ok(values
                    .iter()
                    .map(|&v| Some(self.interval_index_clamped(v)))
                    .collect())
            }
            ColumnData::Categorical { dict, codes } => {
                // Map each dictionary entry to its group once.
                let lookup: Vec<Option<u32>> = dict
                    .iter()
                    .map(|cat| {
                        self.groups
                            .iter()
                            .position(|g| match &g.spec {
                                GroupSpec::Categories(cats) => cats.iter().any(|c| c == cat),
                                GroupSpec::Interval { .. } => false,
                            })
                            .map(|i| i as u32)
                    })
                    .collect();
                Ok(codes.iter().map(|&c| lookup[c as usize]).collect())
            }
        }
    }

    fn interval_index_clamped(&self, v: f64) -> u32 {
        for (i, g) in self.groups.iter().enumerate() {
            if let GroupSpec::Interval {
                lo,
                hi,
                closed_right,
            } = g.spec
            {
                let inside = v >= lo && (v < hi || (closed_right && v <= hi));
                if inside {
                    return i as u32;
                }
            }
        }
        // Out of range: clamp to the nearest boundary group.
        if let GroupSpec::Interval { lo, .. } = self.groups[0].spec {
            if v < lo {
                return 0;
            }
        }
        (self.groups.len() - 1) as u32
    }

    fn validate(&self, n_rows: usize) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "partition on '{}' has no groups",
                self.feature
            )));
        }
        if self.assignment.len() != n_rows {
            return Err(Error::Shape(format!(
                "partition assignment covers {} rows, table has {}",
                self.assignment.len(),
                n_rows
            )));
        }
        let mut counts = vec![0usize; self.groups.len()];
        for &g in &self.assignment {
            let g = g as usize;
            if g >= self.groups.len() {
                return Err(Error::Shape("assignment index out of range".into()));
            }
            counts[g] += 1;
        }
        for (i, g) in self.groups.iter().enumerate() {
            if counts[i] == 0 {
                return Err(Error::InvalidArgument(format!(
                    "group '{}' of partition on '{}' is empty",
                    g.label, self.feature
                )));
            }
            if counts[i] != g.size {
                return Err(Error::Shape(format!(
                    "group '{}' declares size {} but {} rows are assigned",
                    g.label, g.size, counts[i]
                )));
            }
        }
        Ok(())
    }
}

/// Partition `feature` of `table` according to `strategy`.
pub fn bin_feature(
    table: &DataTable,
    feature: &str,
    strategy: &BinStrategy,
) -> Result<GroupPartition> {
    let column = table
        .column(feature)
        .ok_or_else(|| Error::InvalidArgument(format!("table has no column '{feature}'")))?;
    let partition = match (&column.data, strategy) {
        (ColumnData::Numeric(values), BinStrategy::Quantile { k }) => {
            quantile_partition(feature, values, *k)?
        }
        (ColumnData::Numeric(values), BinStrategy::Edges(edges)) => {
            edges_partition(feature, values, edges)?
        }
        (ColumnData::Categorical { dict, codes }, BinStrategy::Categories) => {
            categories_partition(feature, dict, codes)
        }
        (ColumnData::Numeric(_), BinStrategy::Categories) => {
            return Err(Error::InvalidArgument(format!(
                "category binning requested for numeric column '{feature}'"
            )))
        }
        (ColumnData::Categorical { .. }, _) => {
            return Err(Error::InvalidArgument(format!(
                "interval binning requested for categorical column '{feature}'"
            )))
        }
    };
    partition.validate(table.rows())?;
    Ok(partition)
}

/// Partition with the default strategy for the column's kind: quantile bins
/// (with small-bin merging) for numeric, category identity for categorical.
pub fn default_partition(table: &DataTable, feature: &str) -> Result<GroupPartition> {
    let column = table
        .column(feature)
        .ok_or_else(|| Error::InvalidArgument(format!("table has no column '{feature}'")))?;
    let strategy = match column.data {
        ColumnData::Numeric(_) => BinStrategy::Quantile {
            k: DEFAULT_QUANTILE_BINS,
        },
        ColumnData::Categorical { .. } => BinStrategy::Categories,
    };
    bin_feature(table, feature, &strategy)
}

fn quantile_partition(feature: &str, values: &[f64], k: usize) -> Result<GroupPartition> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "quantile binning needs k >= 2, got {k}"
        )));
    }
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "cannot bin empty column '{feature}'"
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "column '{feature}' has non-finite values"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut distinct = sorted.clone();
    distinct.dedup();
    if distinct.len() < k {
        return Err(Error::InvalidArgument(format!(
            "quantile binning with k={k} needs at least {k} distinct values, column '{feature}' has {}",
            distinct.len()
        )));
    }

    let n = sorted.len();
    let top = sorted[n - 1];
    // Interior edges at the rounded order-statistic positions. When a cut
    // lands inside a run of tied values already covered by the previous
    // edge, the next bin opens at the following distinct value, so a heavy
    // tied block becomes its own bin. Sliver bins this creates are cleaned
    // up by the minimum-size merge below.
    let mut edges = vec![sorted[0]];
    for i in 1..k {
        let pos = ((i as f64 * n as f64) / k as f64).round() as usize;
        let pos = pos.clamp(1, n - 1);
        let mut e = sorted[pos];
        let last = *edges.last().unwrap();
        if e <= last {
            let next = distinct.partition_point(|&d| d <= last);
            if next >= distinct.len() {
                continue;
            }
            e = distinct[next];
        }
        if e > *edges.last().unwrap() && e < top {
            edges.push(e);
        }
    }
    edges.push(top);

    let mut partition = partition_from_edges(feature, values, &edges);
    merge_small_groups(&mut partition, DEFAULT_MIN_GROUP_SIZE);
    Ok(partition)
}

fn edges_partition(feature: &str, values: &[f64], edges: &[f64]) -> Result<GroupPartition> {
    if edges.len() < 2 {
        return Err(Error::InvalidArgument(
            "explicit edges need at least two values".into(),
        ));
    }
    if edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "explicit edges must be strictly increasing".into(),
        ));
    }
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "cannot bin empty column '{feature}'"
        )));
    }
    let (lo, hi) = (edges[0], *edges.last().unwrap());
    for &v in values {
        if !v.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "column '{feature}' has non-finite values"
            )));
        }
        if v < lo || v > hi {
            return Err(Error::InvalidArgument(format!(
                "edges [{lo}, {hi}] do not cover observed value {v} in column '{feature}'"
            )));
        }
    }
    Ok(partition_from_edges(feature, values, edges))
}

fn partition_from_edges(feature: &str, values: &[f64], edges: &[f64]) -> GroupPartition {
    let n_groups = edges.len() - 1;
    let assignment: Vec<u32> = values
        .iter()
        .map(|&v| {
            // Last interval is closed on the right.
            let mut g = match edges[1..n_groups].binary_search_by(|e| e.partial_cmp(&v).unwrap()) {
                Ok(i) => i + 1, // v equals an interior edge: belongs to the bin starting there
                Err(i) => i,
            };
            if g >= n_groups {
                g = n_groups - 1;
            }
            g as u32
        })
        .collect();
    let mut sizes = vec![0usize; n_groups];
    for &g in &assignment {
        sizes[g as usize] += 1;
    }
    let groups = (0..n_groups)
        .map(|i| {
            let closed_right = i == n_groups - 1;
            Group {
                label: interval_label(edges[i], edges[i + 1], closed_right),
                spec: GroupSpec::Interval {
                    lo: edges[i],
                    hi: edges[i + 1],
                    closed_right,
                },
                size: sizes[i],
            }
        })
        .collect();
    GroupPartition {
        feature: feature.to_string(),
        groups,
        assignment,
    }
}

/// Merge bins smaller than `min_size` into their smaller neighbor until all
/// bins reach the floor (or one bin remains). Interval bins only.
fn merge_small_groups(partition: &mut GroupPartition, min_size: usize) {
    loop {
        if partition.groups.len() <= 1 {
            return;
        }
        let Some(idx) = partition
            .groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.size < min_size)
            .min_by_key(|(i, g)| (g.size, *i))
            .map(|(i, _)| i)
        else {
            return;
        };
        let neighbor = if idx == 0 {
            1
        } else if idx == partition.groups.len() - 1 {
            idx - 1
        } else if partition.groups[idx - 1].size <= partition.groups[idx + 1].size {
            idx - 1
        } else {
            idx + 1
        };
        let (keep, drop) = (idx.min(neighbor), idx.max(neighbor));
        let (lo, closed_right_keep) = match partition.groups[keep].spec {
            GroupSpec::Interval { lo, .. } => (
                lo,
                matches!(
                    partition.groups[drop].spec,
                    GroupSpec::Interval {
                        closed_right: true,
                        ..
                    }
                ),
            ),
            _ => return,
        };
        let hi = match partition.groups[drop].spec {
            GroupSpec::Interval { hi, .. } => hi,
            _ => return,
        };
        partition.groups[keep] = Group {
            label: interval_label(lo, hi, closed_right_keep),
            spec: GroupSpec::Interval {
                lo,
                hi,
                closed_right: closed_right_keep,
            },
            size: partition.groups[keep].size + partition.groups[drop].size,
        };
        partition.groups.remove(drop);
        for a in &mut partition.assignment {
            let g = *a as usize;
            if g == drop {
                *a = keep as u32;
            } else if g > drop {
                *a = (g - 1) as u32;
            }
        }
    }
}

fn categories_partition(feature: &str, dict: &[String], codes: &[u32]) -> GroupPartition {
    let mut counts = vec![0usize; dict.len()];
    for &c in codes {
        counts[c as usize] += 1;
    }
    // Groups in dictionary order, skipping categories absent from this table
    // (a split can leave dictionary entries unused).
    let mut group_of_code = vec![u32::MAX; dict.len()];
    let mut groups = Vec::new();
    for (code, cat) in dict.iter().enumerate() {
        if counts[code] > 0 {
            group_of_code[code] = groups.len() as u32;
            groups.push(Group {
                label: cat.clone(),
                spec: GroupSpec::Categories(vec![cat.clone()]),
                size: counts[code],
            });
        }
    }
    let assignment = codes.iter().map(|&c| group_of_code[c as usize]).collect();
    GroupPartition {
        feature: feature.to_string(),
        groups,
        assignment,
    }
}

fn interval_label(lo: f64, hi: f64, closed_right: bool) -> String {
    let close = if closed_right { "]" } else { ")" };
    format!("[{}, {}{}", trim_float(lo), trim_float(hi), close)
}

fn trim_float(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
