//! Model-ready feature encodings.
//!
//! Tree learners consume raw numerics plus stable ordinal codes for
//! categories; linear learners consume standardized numerics plus one-hot
//! indicators. The encoder is fitted on a training table and can then
//! transform any schema-compatible table deterministically: unseen
//! categories map to a reserved code (tree mode) or to all-zero indicators
//! (linear mode).

use serde::{Deserialize, Serialize};

use crate::dataset::table::{ColumnData, ColumnKind, DataTable};
use crate::error::{Error, Result};

/// Encoding family, chosen by the learner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodeMode {
    /// Raw numerics; ordinal category codes (0 reserved for unseen).
    Tree,
    /// Standardized numerics; one-hot category indicators.
    Linear,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "plan")]
enum ColumnPlan {
    NumericRaw {
        name: String,
    },
    NumericStandardized {
        name: String,
        mean: f64,
        std: f64,
    },
    /// Categories sorted lexicographically; code = sorted index + 1.
    CategoricalOrdinal {
        name: String,
        categories: Vec<String>,
    },
    /// One indicator column per category, in sorted order.
    CategoricalOneHot {
        name: String,
        categories: Vec<String>,
    },
}

/// A fitted, reusable feature encoding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Encoder {
    mode: EncodeMode,
    plans: Vec<ColumnPlan>,
}

/// Dense column-major feature matrix plus the target.
#[derive(Debug, Clone)]
pub struct EncodedMatrix {
    n_rows: usize,
    n_cols: usize,
    /// Column-major: `data[col * n_rows + row]`.
    data: Vec<f64>,
    target: Vec<u8>,
    col_names: Vec<String>,
}

impl EncodedMatrix {
    /// Assemble a matrix from ready-made feature columns. All columns must
    /// share the target's length; this is the entry point for callers that
    /// bring their own arrays instead of a [`DataTable`].
    pub fn from_columns(
        names: Vec<String>,
        columns: Vec<Vec<f64>>,
        target: Vec<u8>,
    ) -> Result<EncodedMatrix> {
        if names.len() != columns.len() {
            return Err(Error::Shape(format!(
                "{} column names for {} columns",
                names.len(),
                columns.len()
            )));
        }
        let n_rows = target.len();
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != n_rows {
                return Err(Error::Shape(format!(
                    "column '{name}' has {} rows, target has {n_rows}",
                    col.len()
                )));
            }
        }
        if target.iter().any(|&y| y > 1) {
            return Err(Error::InvalidArgument(
                "target values must be 0 or 1".into(),
            ));
        }
        let n_cols = columns.len();
        let mut data = Vec::with_capacity(n_cols * n_rows);
        for col in &columns {
            data.extend_from_slice(col);
        }
        Ok(EncodedMatrix {
            n_rows,
            n_cols,
            data,
            target,
            col_names: names,
        })
    }

    /// The same features with a replacement target (used when training on
    /// relabeled data).
    pub fn with_target(&self, target: Vec<u8>) -> Result<EncodedMatrix> {
        if target.len() != self.n_rows {
            return Err(Error::Shape(format!(
                "replacement target has {} rows, matrix has {}",
                target.len(),
                self.n_rows
            )));
        }
        let mut out = self.clone();
        out.target = target;
        Ok(out)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn target(&self) -> &[u8] {
        &self.target
    }

    pub fn col_names(&self) -> &[String] {
        &self.col_names
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n_rows + row]
    }

    /// Copy one row into `out` (length `n_cols`).
    pub fn fill_row(&self, row: usize, out: &mut [f64]) {
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = self.data[j * self.n_rows + row];
        }
    }
}

impl Encoder {
    /// Fit an encoding on `table`. Category dictionaries are sorted so the
    /// code assignment depends only on the set of observed categories, and
    /// numeric standardization statistics are frozen here.
    pub fn fit(table: &DataTable, mode: EncodeMode) -> Encoder {
        let plans = table
            .columns()
            .iter()
            .map(|col| match (&col.data, mode) {
                (ColumnData::Numeric(_), EncodeMode::Tree) => ColumnPlan::NumericRaw {
                    name: col.name.clone(),
                },
                (ColumnData::Numeric(values), EncodeMode::Linear) => {
                    let (mean, std) = mean_std(values);
                    ColumnPlan::NumericStandardized {
                        name: col.name.clone(),
                        mean,
                        std,
                    }
                }
                (ColumnData::Categorical { dict, .. }, _) => {
                    let mut categories = dict.clone();
                    categories.sort();
                    match mode {
                        EncodeMode::Tree => ColumnPlan::CategoricalOrdinal {
                            name: col.name.clone(),
                            categories,
                        },
                        EncodeMode::Linear => ColumnPlan::CategoricalOneHot {
                            name: col.name.clone(),
                            categories,
                        },
                    }
                }
            })
            .collect();
        Encoder { mode, plans }
    }

    pub fn mode(&self) -> EncodeMode {
        self.mode
    }

    /// Number of output feature columns.
    pub fn n_output_cols(&self) -> usize {
        self.plans
            .iter()
            .map(|p| match p {
                ColumnPlan::NumericRaw { .. } | ColumnPlan::NumericStandardized { .. } => 1,
                ColumnPlan::CategoricalOrdinal { .. } => 1,
                ColumnPlan::CategoricalOneHot { categories, .. } => categories.len(),
            })
            .sum()
    }

    /// Transform a schema-compatible table into a dense matrix.
    pub fn transform(&self, table: &DataTable) -> Result<EncodedMatrix> {
        if table.columns().len() != self.plans.len() {
            return Err(Error::Shape(format!(
                "table has {} columns, encoder was fitted on {}",
                table.columns().len(),
                self.plans.len()
            )));
        }
        let n_rows = table.rows();
        let n_cols = self.n_output_cols();
        let mut data = vec![0.0f64; n_cols * n_rows];
        let mut col_names = Vec::with_capacity(n_cols);
        let mut out_col = 0usize;

        for (plan, col) in self.plans.iter().zip(table.columns()) {
            match plan {
                ColumnPlan::NumericRaw { name } => {
                    let values = expect_numeric(col, name)?;
                    data[out_col * n_rows..(out_col + 1) * n_rows].copy_from_slice(values);
                    col_names.push(name.clone());
                    out_col += 1;
                }
                ColumnPlan::NumericStandardized { name, mean, std } => {
                    let values = expect_numeric(col, name)?;
                    let dst = &mut data[out_col * n_rows..(out_col + 1) * n_rows];
                    for (d, &v) in dst.iter_mut().zip(values) {
                        *d = (v - mean) / std;
                    }
                    col_names.push(name.clone());
                    out_col += 1;
                }
                ColumnPlan::CategoricalOrdinal { name, categories } => {
                    let (dict, codes) = expect_categorical(col, name)?;
                    let code_map = code_lookup(dict, categories);
                    let dst = &mut data[out_col * n_rows..(out_col + 1) * n_rows];
                    for (d, &c) in dst.iter_mut().zip(codes) {
                        *d = code_map[c as usize] as f64;
                    }
                    col_names.push(name.clone());
                    out_col += 1;
                }
                ColumnPlan::CategoricalOneHot { name, categories } => {
                    let (dict, codes) = expect_categorical(col, name)?;
                    let code_map = code_lookup(dict, categories);
                    for (k, cat) in categories.iter().enumerate() {
                        let dst = &mut data[(out_col + k) * n_rows..(out_col + k + 1) * n_rows];
                        let want = (k + 1) as u32;
                        for (d, &c) in dst.iter_mut().zip(codes.iter()) {
                            *d = f64::from(code_map[c as usize] == want);
                        }
                        col_names.push(format!("{name}={cat}"));
                    }
                    out_col += categories.len();
                }
            }
        }

        Ok(EncodedMatrix {
            n_rows,
            n_cols,
            data,
            target: table.target().to_vec(),
            col_names,
        })
    }
}

/// `fit` + `transform` in one step.
pub fn encode(table: &DataTable, mode: EncodeMode) -> Result<(Encoder, EncodedMatrix)> {
    let encoder = Encoder::fit(table, mode);
    let matrix = encoder.transform(table)?;
    Ok((encoder, matrix))
}

/// Map a table's dictionary codes to the encoder's sorted codes
/// (1-based; 0 = unseen).
fn code_lookup(dict: &[String], sorted_categories: &[String]) -> Vec<u32> {
    dict.iter()
        .map(|cat| match sorted_categories.binary_search(cat) {
            Ok(i) => (i + 1) as u32,
            Err(_) => 0,
        })
        .collect()
}

fn expect_numeric<'t>(col: &'t crate::dataset::table::Column, name: &str) -> Result<&'t [f64]> {
    if col.name != name || col.kind() != ColumnKind::Numeric {
        return Err(Error::Schema(format!(
            "expected numeric column '{name}', found '{}' ({:?})",
            col.name,
            col.kind()
        )));
    }
    Ok(col.numeric().expect("checked numeric"))
}

fn expect_categorical<'t>(
    col: &'t crate::dataset::table::Column,
    name: &str,
) -> Result<(&'t [String], &'t [u32])> {
    match (&col.data, col.name == name) {
        (ColumnData::Categorical { dict, codes }, true) => Ok((dict, codes)),
        _ => Err(Error::Schema(format!(
            "expected categorical column '{name}', found '{}' ({:?})",
            col.name,
            col.kind()
        ))),
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 1.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let std = var.sqrt();
    (mean, if std > 0.0 { std } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::table::{Column, DataTable};

    fn toy() -> DataTable {
        DataTable::new(
            vec![
                Column {
                    name: "x".into(),
                    data: ColumnData::Numeric(vec![1.0, 2.0, 3.0, 6.0]),
                },
                Column {
                    name: "c".into(),
                    data: ColumnData::Categorical {
                        dict: vec!["m".into(), "f".into()],
                        codes: vec![0, 1, 1, 0],
                    },
                },
            ],
            vec![0, 1, 1, 0],
            "y".into(),
        )
        .unwrap()
    }

    #[test]
    fn linear_column_count_is_numeric_plus_cardinalities() {
        let (_, m) = encode(&toy(), EncodeMode::Linear).unwrap();
        assert_eq!(m.n_cols(), 1 + 2);
        assert_eq!(m.col_names(), &["x", "c=f", "c=m"]);
    }

    #[test]
    fn tree_mode_keeps_raw_numerics_and_sorted_codes() {
        let (_, m) = encode(&toy(), EncodeMode::Tree).unwrap();
        assert_eq!(m.n_cols(), 2);
        assert_eq!(m.col(0), &[1.0, 2.0, 3.0, 6.0]);
        // "f" < "m": f -> 1, m -> 2.
        assert_eq!(m.col(1), &[2.0, 1.0, 1.0, 2.0]);
    }

    #[test]
    fn linear_mode_standardizes() {
        let (_, m) = encode(&toy(), EncodeMode::Linear).unwrap();
        let col = m.col(0);
        let mean: f64 = col.iter().sum::<f64>() / 4.0;
        assert!(mean.abs() < 1e-12);
        let var: f64 = col.iter().map(|v| v * v).sum::<f64>() / 4.0;
        assert!((var - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_bit_identical() {
        let t = toy();
        let (_, a) = encode(&t, EncodeMode::Linear).unwrap();
        let (_, b) = encode(&t, EncodeMode::Linear).unwrap();
        assert_eq!(a.data, b.data);
    }

    #[test]
    fn unseen_category_gets_reserved_code() {
        let t = toy();
        let enc = Encoder::fit(&t, EncodeMode::Tree);
        let other = DataTable::new(
            vec![
                Column {
                    name: "x".into(),
                    data: ColumnData::Numeric(vec![5.0]),
                },
                Column {
                    name: "c".into(),
                    data: ColumnData::Categorical {
                        dict: vec!["z".into()],
                        codes: vec![0],
                    },
                },
            ],
            vec![1],
            "y".into(),
        )
        .unwrap();
        let m = enc.transform(&other).unwrap();
        assert_eq!(m.col(1), &[0.0]);

        let enc_lin = Encoder::fit(&t, EncodeMode::Linear);
        let m_lin = enc_lin.transform(&other).unwrap();
        assert_eq!(m_lin.col(1), &[0.0]);
        assert_eq!(m_lin.col(2), &[0.0]);
    }

    #[test]
    fn column_mismatch_rejected() {
        let t = toy();
        let enc = Encoder::fit(&t, EncodeMode::Tree);
        let other = DataTable::new(
            vec![Column {
                name: "x".into(),
                data: ColumnData::Numeric(vec![5.0]),
            }],
            vec![1],
            "y".into(),
        )
        .unwrap();
        assert!(enc.transform(&other).is_err());
    }
}
