//! Seeded stratified train/audit splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::dataset::table::DataTable;
use crate::error::{Error, Result};

/// Split `table` into (train, audit) parts, stratified by the target so both
/// parts preserve the positive rate as closely as integer counts allow.
///
/// The audit part receives `round(test_fraction * n)` rows, of which
/// `round(test_fraction * n_pos)` are positive (clamped so the negative
/// count stays feasible). Row order within each part follows the original
/// table. Identical `(table, test_fraction, seed)` always yields the same
/// split; different seeds yield different memberships.
pub fn split(table: &DataTable, test_fraction: f64, seed: u64) -> Result<(DataTable, DataTable)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "test_fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    let n = table.rows();
    if n == 0 {
        return Err(Error::InvalidArgument("cannot split an empty table".into()));
    }

    let mut pos_idx: Vec<usize> = Vec::new();
    let mut neg_idx: Vec<usize> = Vec::new();
    for (i, &y) in table.target().iter().enumerate() {
        if y == 1 {
            pos_idx.push(i);
        } else {
            neg_idx.push(i);
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    pos_idx.shuffle(&mut rng);
    neg_idx.shuffle(&mut rng);

    let n_test = round_count(test_fraction * n as f64).clamp(1, n.saturating_sub(1).max(1));
    let mut n_test_pos = round_count(test_fraction * pos_idx.len() as f64).min(pos_idx.len());
    // Keep the negative count feasible.
    if n_test < n_test_pos {
        n_test_pos = n_test;
    }
    let mut n_test_neg = n_test - n_test_pos;
    if n_test_neg > neg_idx.len() {
        n_test_neg = neg_idx.len();
        n_test_pos = (n_test - n_test_neg).min(pos_idx.len());
    }

    let mut test_rows: Vec<usize> = Vec::with_capacity(n_test_pos + n_test_neg);
    test_rows.extend_from_slice(&pos_idx[..n_test_pos]);
    test_rows.extend_from_slice(&neg_idx[..n_test_neg]);
    let mut train_rows: Vec<usize> = Vec::with_capacity(n - test_rows.len());
    train_rows.extend_from_slice(&pos_idx[n_test_pos..]);
    train_rows.extend_from_slice(&neg_idx[n_test_neg..]);
    test_rows.sort_unstable();
    train_rows.sort_unstable();

    Ok((table.select_rows(&train_rows), table.select_rows(&test_rows)))
}

/// Stratified subsample of `n_rows` rows (seeded). Returns the table itself
/// cloned if it is already small enough.
pub fn subsample(table: &DataTable, n_rows: usize, seed: u64) -> Result<DataTable> {
    if n_rows == 0 {
        return Err(Error::InvalidArgument("cannot subsample to 0 rows".into()));
    }
    if n_rows >= table.rows() {
        return Ok(table.clone());
    }
    // Reuse the stratified machinery: the "audit" part of a split with
    // fraction n_rows / n is exactly a stratified subsample.
    let fraction = n_rows as f64 / table.rows() as f64;
    let (_, sample) = split(table, fraction, seed)?;
    Ok(sample)
}

/// `f64::round` semantics (half away from zero), as a usize.
fn round_count(x: f64) -> usize {
    x.round() as usize
}
