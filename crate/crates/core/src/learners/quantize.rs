//! Split-candidate quantization for the tree learners.
//!
//! Continuous features are reduced to at most [`MAX_SPLIT_CANDIDATES`]
//! thresholds chosen by weighted quantiles, and every row is mapped to a bin
//! index once so each tree node can score splits from small histograms.
//! Values are aggregated per distinct value before quantiles are taken, so
//! a row with integer weight k produces exactly the same thresholds as k
//! duplicated rows.

use crate::dataset::EncodedMatrix;

/// Cap on split thresholds per feature.
pub(crate) const MAX_SPLIT_CANDIDATES: usize = 32;

/// Per-feature split thresholds plus the per-row bin assignment they induce.
pub(crate) struct BinnedMatrix {
    n_rows: usize,
    cuts: Vec<Vec<f64>>,
    /// Column-major: `bins[feature * n_rows + row]`.
    bins: Vec<u8>,
}

impl BinnedMatrix {
    /// Quantize every feature of `x` using weights `w` (rows with zero
    /// weight do not influence thresholds).
    pub fn build(x: &EncodedMatrix, w: &[f64]) -> BinnedMatrix {
        let n_rows = x.n_rows();
        let n_features = x.n_cols();
        let mut cuts = Vec::with_capacity(n_features);
        let mut bins = vec![0u8; n_features * n_rows];
        for f in 0..n_features {
            let col = x.col(f);
            let feature_cuts = weighted_quantile_cuts(col, w, MAX_SPLIT_CANDIDATES);
            let dst = &mut bins[f * n_rows..(f + 1) * n_rows];
            for (b, &v) in dst.iter_mut().zip(col) {
                *b = feature_cuts.partition_point(|&c| c <= v) as u8;
            }
            cuts.push(feature_cuts);
        }
        BinnedMatrix { n_rows, cuts, bins }
    }

    pub fn n_features(&self) -> usize {
        self.cuts.len()
    }

    /// Candidate thresholds for a feature; splitting at `cuts[k]` sends
    /// bins `0..=k` left (`value < cut`) and the rest right.
    pub fn cuts(&self, f: usize) -> &[f64] {
        &self.cuts[f]
    }

    /// Number of bins for a feature (`cuts + 1`).
    pub fn n_bins(&self, f: usize) -> usize {
        self.cuts[f].len() + 1
    }

    /// Bin index per row for a feature.
    pub fn bins(&self, f: usize) -> &[u8] {
        &self.bins[f * self.n_rows..(f + 1) * self.n_rows]
    }
}

/// At most `max_cuts` split thresholds from the weighted value distribution.
///
/// Thresholds are always observed values: a cut at value v means "go left if
/// value < v", so every returned cut produces two non-empty sides on the
/// data it was computed from. When the feature has few distinct values every
/// possible cut is returned (exact search); otherwise cuts are placed at
/// evenly spaced quantiles of the weight mass.
pub(crate) fn weighted_quantile_cuts(values: &[f64], weights: &[f64], max_cuts: usize) -> Vec<f64> {
    // Aggregate weight per distinct value, ignoring zero-weight rows.
    let mut pairs: Vec<(f64, f64)> = values
        .iter()
        .zip(weights)
        .filter(|&(_, &w)| w > 0.0)
        .map(|(&v, &w)| (v, w))
        .collect();
    if pairs.is_empty() {
        return Vec::new();
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut distinct: Vec<(f64, f64)> = Vec::new();
    for (v, w) in pairs {
        match distinct.last_mut() {
            Some(last) if last.0 == v => last.1 += w,
            _ => distinct.push((v, w)),
        }
    }
    // Candidate cuts sit at every distinct value except the smallest.
    if distinct.len() <= max_cuts + 1 {
        return distinct.iter().skip(1).map(|&(v, _)| v).collect();
    }

    let total: f64 = distinct.iter().map(|&(_, w)| w).sum();
    let mut cum = 0.0;
    let mut cumulative: Vec<f64> = Vec::with_capacity(distinct.len());
    for &(_, w) in &distinct {
        cum += w;
        cumulative.push(cum);
    }

    let mut cuts = Vec::with_capacity(max_cuts);
    for j in 1..=max_cuts {
        let target = total * j as f64 / (max_cuts + 1) as f64;
        // Smallest i whose cumulative weight reaches the target: values up
        // to and including distinct[i] stay left, so the cut is the next
        // distinct value.
        let i = cumulative.partition_point(|&c| c < target);
        if i + 1 < distinct.len() {
            let cut = distinct[i + 1].0;
            if cuts.last() != Some(&cut) {
                cuts.push(cut);
            }
        }
    }
    cuts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn few_distinct_values_yield_exact_candidates() {
        let values = [3.0, 1.0, 2.0, 5.0, 4.0, 2.0];
        let weights = [1.0; 6];
        let cuts = weighted_quantile_cuts(&values, &weights, 32);
        assert_eq!(cuts, vec![2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn single_cut_lands_near_the_weighted_median() {
        // Mass: 1.0 -> 1, 2.0 -> 8, 3.0 -> 1. The midpoint of the weight
        // falls inside the 2.0 block, so the only usable cut is above it.
        let values = [1.0, 2.0, 3.0];
        let weights = [1.0, 8.0, 1.0];
        let cuts = weighted_quantile_cuts(&values, &weights, 1);
        assert_eq!(cuts, vec![3.0]);
    }

    #[test]
    fn integer_weights_match_physical_duplication() {
        let values = [0.3, 1.7, 0.9, 2.4];
        let weights = [2.0, 1.0, 3.0, 2.0];
        let mut dup_values = Vec::new();
        for (&v, &w) in values.iter().zip(&weights) {
            for _ in 0..w as usize {
                dup_values.push(v);
            }
        }
        let dup_weights = vec![1.0; dup_values.len()];
        for max_cuts in [1, 2, 3, 32] {
            let a = weighted_quantile_cuts(&values, &weights, max_cuts);
            let b = weighted_quantile_cuts(&dup_values, &dup_weights, max_cuts);
            assert_eq!(a, b, "max_cuts = {max_cuts}");
        }
    }

    #[test]
    fn zero_weight_rows_do_not_shape_cuts() {
        let values = [1.0, 2.0, 100.0];
        let with_zero = weighted_quantile_cuts(&values, &[1.0, 1.0, 0.0], 32);
        let without = weighted_quantile_cuts(&values[..2], &[1.0, 1.0], 32);
        assert_eq!(with_zero, without);
    }

    #[test]
    fn heavy_tie_block_still_produces_a_usable_cut() {
        // 900 zeros then 1..=100: the zero block hogs the low quantiles but
        // each cut must still separate two non-empty sides.
        let mut values = vec![0.0; 900];
        values.extend((1..=100).map(f64::from));
        let weights = vec![1.0; values.len()];
        let cuts = weighted_quantile_cuts(&values, &weights, 32);
        assert!(!cuts.is_empty());
        assert!(cuts.len() <= 32);
        assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        for &c in &cuts {
            assert!(values.iter().any(|&v| v < c));
            assert!(values.iter().any(|&v| v >= c));
        }
    }

    #[test]
    fn bin_indices_count_cuts_at_or_below_value() {
        let x = EncodedMatrix::from_columns(
            vec!["f".into()],
            vec![vec![1.0, 2.0, 3.0, 4.0, 5.0]],
            vec![0, 1, 0, 1, 0],
        )
        .unwrap();
        let binned = BinnedMatrix::build(&x, &[1.0; 5]);
        assert_eq!(binned.cuts(0), &[2.0, 3.0, 4.0, 5.0]);
        assert_eq!(binned.bins(0), &[0, 1, 2, 3, 4]);
        assert_eq!(binned.n_bins(0), 5);
    }

    #[test]
    fn constant_feature_has_no_cuts() {
        let cuts = weighted_quantile_cuts(&[7.0; 50], &[1.0; 50], 32);
        assert!(cuts.is_empty());
    }
}
