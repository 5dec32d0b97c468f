//! CSV loading against a declared schema.

use std::collections::HashMap;
use std::path::Path;

use crate::dataset::schema::Schema;
use crate::dataset::table::{Column, ColumnData, ColumnKind, DataTable};
use crate::error::{Error, Result};

/// Cell values treated as missing in numeric columns. Missing numerics are
/// median-imputed after the full pass; missing categoricals are just another
/// category (the census convention of "?" cells).
const MISSING: [&str; 2] = ["", "?"];

enum Builder {
    Numeric {
        values: Vec<f64>,
        missing: Vec<usize>,
    },
    Categorical {
        dict: Vec<String>,
        index: HashMap<String, u32>,
        codes: Vec<u32>,
    },
}

/// Read a headered CSV into a [`DataTable`], validating it against `schema`.
///
/// The header must match the schema's column names in order. Numeric cells
/// that fail to parse, unparseable target labels, and rows with the wrong
/// column count are reported with their 1-based row number (counting the
/// header as row 1). An empty data section yields a valid zero-row table.
pub fn load_table(path: &Path, schema: &Schema) -> Result<DataTable> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(file);

    let headers = reader.headers()?.clone();
    let declared: Vec<&str> = schema.columns.iter().map(|c| c.name.as_str()).collect();
    let found: Vec<&str> = headers.iter().collect();
    if found != declared {
        return Err(Error::Schema(format!(
            "csv header {:?} does not match schema columns {:?}",
            found, declared
        )));
    }

    let target_decl = schema.target();
    let target_idx = schema
        .columns
        .iter()
        .position(|c| c.target)
        .expect("schema has a target");

    let mut builders: Vec<Builder> = schema
        .features()
        .map(|decl| match decl.kind {
            ColumnKind::Numeric => Builder::Numeric {
                values: Vec::new(),
                missing: Vec::new(),
            },
            ColumnKind::Categorical => Builder::Categorical {
                dict: Vec::new(),
                index: HashMap::new(),
                codes: Vec::new(),
            },
        })
        .collect();
    let mut target: Vec<u8> = Vec::new();

    for (rec_no, record) in reader.records().enumerate() {
        let row = rec_no + 2; // 1-based, after the header row
        let record = record?;
        let mut feature_slot = 0usize;
        for (col_idx, cell) in record.iter().enumerate() {
            if col_idx == target_idx {
                target.push(parse_target(cell, target_decl, row)?);
                continue;
            }
            match &mut builders[feature_slot] {
                Builder::Numeric { values, missing } => {
                    if MISSING.contains(&cell) {
                        missing.push(values.len());
                        values.push(f64::NAN);
                    } else {
                        let v: f64 = cell.parse().map_err(|_| Error::Parse {
                            row,
                            message: format!(
                                "numeric column '{}' has unparseable value '{}'",
                                declared[col_idx], cell
                            ),
                        })?;
                        if !v.is_finite() {
                            return Err(Error::Parse {
                                row,
                                message: format!(
                                    "numeric column '{}' has non-finite value '{}'",
                                    declared[col_idx], cell
                                ),
                            });
                        }
                        values.push(v);
                    }
                }
                Builder::Categorical { dict, index, codes } => {
                    let code = match index.get(cell) {
                        Some(&c) => c,
                        None => {
                            let c = dict.len() as u32;
                            dict.push(cell.to_string());
                            index.insert(cell.to_string(), c);
                            c
                        }
                    };
                    codes.push(code);
                }
            }
            feature_slot += 1;
        }
    }

    let columns = schema
        .features()
        .zip(builders)
        .map(|(decl, builder)| {
            let data = match builder {
                Builder::Numeric {
                    mut values,
                    missing,
                } => {
                    if !missing.is_empty() {
                        let median = median_of_present(&values).ok_or_else(|| {
                            Error::Schema(format!(
                                "numeric column '{}' has no non-missing values to impute from",
                                decl.name
                            ))
                        })?;
                        for i in missing {
                            values[i] = median;
                        }
                    }
                    ColumnData::Numeric(values)
                }
                Builder::Categorical { dict, codes, .. } => ColumnData::Categorical { dict, codes },
            };
            Ok(Column {
                name: decl.name.clone(),
                data,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    DataTable::new(columns, target, target_decl.name.clone())
}

fn parse_target(cell: &str, decl: &crate::dataset::schema::ColumnDecl, row: usize) -> Result<u8> {
    match (&decl.positive, &decl.negative) {
        (Some(pos), Some(neg)) => {
            if cell == pos {
                Ok(1)
            } else if cell == neg {
                Ok(0)
            } else {
                Err(Error::Parse {
                    row,
                    message: format!(
                        "target '{}' has non-binary value '{}' (expected '{}' or '{}')",
                        decl.name, cell, pos, neg
                    ),
                })
            }
        }
        _ => match cell {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(Error::Parse {
                row,
                message: format!(
                    "target '{}' has non-binary value '{}' (expected 0 or 1)",
                    decl.name, other
                ),
            }),
        },
    }
}

fn median_of_present(values: &[f64]) -> Option<f64> {
    let mut present: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if present.is_empty() {
        return None;
    }
    present.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = present.len();
    Some(if n % 2 == 1 {
        present[n / 2]
    } else {
        0.5 * (present[n / 2 - 1] + present[n / 2])
    })
}
