//! Column-major table with a binary target.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declared type of a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnKind {
    Numeric,
    Categorical,
}

/// Storage for one feature column.
///
/// Categorical columns are dictionary-encoded: `codes[i]` indexes into
/// `dict`. The dictionary order is the order of first appearance in the
/// source, and it is preserved verbatim by row selection so that splits of
/// the same table share category codes.
#[derive(Debug, Clone)]
pub enum ColumnData {
    Numeric(Vec<f64>),
    Categorical { dict: Vec<String>, codes: Vec<u32> },
}

/// A named feature column.
#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub data: ColumnData,
}

impl Column {
    pub fn kind(&self) -> ColumnKind {
        match self.data {
            ColumnData::Numeric(_) => ColumnKind::Numeric,
            ColumnData::Categorical { .. } => ColumnKind::Categorical,
        }
    }

    pub fn len(&self) -> usize {
        match &self.data {
            ColumnData::Numeric(v) => v.len(),
            ColumnData::Categorical { codes, .. } => codes.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Numeric value at `row`; `None` for categorical columns.
    pub fn numeric(&self) -> Option<&[f64]> {
        match &self.data {
            ColumnData::Numeric(v) => Some(v),
            ColumnData::Categorical { .. } => None,
        }
    }

    /// Category string at `row`; `None` for numeric columns.
    pub fn category_at(&self, row: usize) -> Option<&str> {
        match &self.data {
            ColumnData::Numeric(_) => None,
            ColumnData::Categorical { dict, codes } => Some(dict[codes[row] as usize].as_str()),
        }
    }
}

/// An immutable dataset: feature columns plus a 0/1 target.
///
/// Invariants enforced at construction: all columns and the target have the
/// same length, column names are unique and distinct from the target name,
/// and every target value is 0 or 1.
#[derive(Debug, Clone)]
pub struct DataTable {
    n_rows: usize,
    columns: Vec<Column>,
    target: Vec<u8>,
    target_name: String,
}

impl DataTable {
    pub fn new(columns: Vec<Column>, target: Vec<u8>, target_name: String) -> Result<Self> {
        let n_rows = target.len();
        let mut seen = std::collections::HashSet::new();
        for col in &columns {
            if col.len() != n_rows {
                return Err(Error::Shape(format!(
                    "column '{}' has {} rows, target has {}",
                    col.name,
                    col.len(),
                    n_rows
                )));
            }
            if !seen.insert(col.name.as_str()) || col.name == target_name {
                return Err(Error::Schema(format!("duplicate column name '{}'", col.name)));
            }
            if let ColumnData::Categorical { dict, codes } = &col.data {
                if codes.iter().any(|&c| c as usize >= dict.len()) {
                    return Err(Error::Shape(format!(
                        "column '{}' has a category code outside its dictionary",
                        col.name
                    )));
                }
            }
        }
        if let Some(bad) = target.iter().find(|&&v| v > 1) {
            return Err(Error::InvalidArgument(format!(
                "target values must be 0 or 1, found {bad}"
            )));
        }
        Ok(DataTable {
            n_rows,
            columns,
            target,
            target_name,
        })
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn target(&self) -> &[u8] {
        &self.target
    }

    pub fn target_name(&self) -> &str {
        &self.target_name
    }

    pub fn feature_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    /// Fraction of rows with target 1. NaN on an empty table.
    pub fn positive_rate(&self) -> f64 {
        if self.n_rows == 0 {
            return f64::NAN;
        }
        self.target.iter().map(|&y| y as usize).sum::<usize>() as f64 / self.n_rows as f64
    }

    /// New table containing the given rows, in the given order.
    /// Category dictionaries are carried over unchanged.
    pub fn select_rows(&self, idx: &[usize]) -> DataTable {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let data = match &col.data {
                    ColumnData::Numeric(v) => {
                        ColumnData::Numeric(idx.iter().map(|&i| v[i]).collect())
                    }
                    ColumnData::Categorical { dict, codes } => ColumnData::Categorical {
                        dict: dict.clone(),
                        codes: idx.iter().map(|&i| codes[i]).collect(),
                    },
                };
                Column {
                    name: col.name.clone(),
                    data,
                }
            })
            .collect();
        let target = idx.iter().map(|&i| self.target[i]).collect();
        DataTable {
            n_rows: idx.len(),
            columns,
            target,
            target_name: self.target_name.clone(),
        }
    }

    /// Same features, different target values (used by label-relabeling
    /// reductions). Length must match.
    pub fn with_target(&self, target: Vec<u8>) -> Result<DataTable> {
        if target.len() != self.n_rows {
            return Err(Error::Shape(format!(
                "replacement target has {} rows, table has {}",
                target.len(),
                self.n_rows
            )));
        }
        if let Some(bad) = target.iter().find(|&&v| v > 1) {
            return Err(Error::InvalidArgument(format!(
                "target values must be 0 or 1, found {bad}"
            )));
        }
        Ok(DataTable {
            n_rows: self.n_rows,
            columns: self.columns.clone(),
            target,
            target_name: self.target_name.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> DataTable {
        DataTable::new(
            vec![
                Column {
                    name: "x".into(),
                    data: ColumnData::Numeric(vec![1.0, 2.0, 3.0, 4.0]),
                },
                Column {
                    name: "c".into(),
                    data: ColumnData::Categorical {
                        dict: vec!["a".into(), "b".into()],
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
    fn positive_rate_counts_ones() {
        assert_eq!(toy().positive_rate(), 0.5);
    }

    #[test]
    fn select_rows_keeps_dictionary() {
        let t = toy().select_rows(&[2, 0]);
        assert_eq!(t.rows(), 2);
        assert_eq!(t.column("c").unwrap().category_at(0), Some("b"));
        assert_eq!(t.column("c").unwrap().category_at(1), Some("a"));
        assert_eq!(t.target(), &[1, 0]);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let err = DataTable::new(
            vec![Column {
                name: "x".into(),
                data: ColumnData::Numeric(vec![1.0]),
            }],
            vec![0, 1],
            "y".into(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn non_binary_target_rejected() {
        let err = DataTable::new(vec![], vec![0, 2], "y".into()).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = DataTable::new(
            vec![
                Column {
                    name: "x".into(),
                    data: ColumnData::Numeric(vec![1.0]),
                },
                Column {
                    name: "x".into(),
                    data: ColumnData::Numeric(vec![2.0]),
                },
            ],
            vec![0],
            "y".into(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }
}
