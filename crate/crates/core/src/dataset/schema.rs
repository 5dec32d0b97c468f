//! Dataset schema declarations, loaded from TOML.
//!
//! A schema lists every CSV column in order, marks exactly one as the
//! binary target, and (for string-labelled targets) names the positive and
//! negative labels:
//!
//! ```toml
//! [[column]]
//! name = "age"
//! kind = "numeric"
//!
//! [[column]]
//! name = "income"
//! kind = "categorical"
//! target = true
//! positive = ">50K"
//! negative = "<=50K"
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::dataset::table::ColumnKind;
use crate::error::{Error, Result};

/// One column declaration.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnDecl {
    pub name: String,
    pub kind: ColumnKind,
    /// Marks the binary target column. Exactly one column must set this.
    #[serde(default)]
    pub target: bool,
    /// Target label mapped to 1. Required together with `negative` when the
    /// target is not already literal 0/1.
    #[serde(default)]
    pub positive: Option<String>,
    /// Target label mapped to 0.
    #[serde(default)]
    pub negative: Option<String>,
}

/// Ordered column declarations for one dataset.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schema {
    #[serde(rename = "column")]
    pub columns: Vec<ColumnDecl>,
}

impl Schema {
    pub fn from_toml(text: &str) -> Result<Self> {
        let schema: Schema =
            toml::from_str(text).map_err(|e| Error::Schema(format!("bad schema TOML: {e}")))?;
        schema.validate()?;
        Ok(schema)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// The single declared target column.
    pub fn target(&self) -> &ColumnDecl {
        self.columns
            .iter()
            .find(|c| c.target)
            .expect("validated schema has a target")
    }

    /// Feature declarations (everything but the target), in declared order.
    pub fn features(&self) -> impl Iterator<Item = &ColumnDecl> {
        self.columns.iter().filter(|c| !c.target)
    }

    fn validate(&self) -> Result<()> {
        if self.columns.is_empty() {
            return Err(Error::Schema("schema declares no columns".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for col in &self.columns {
            if !seen.insert(col.name.as_str()) {
                return Err(Error::Schema(format!(
                    "duplicate column name '{}'",
                    col.name
                )));
            }
            if !col.target && (col.positive.is_some() || col.negative.is_some()) {
                return Err(Error::Schema(format!(
                    "column '{}' declares target labels but is not the target",
                    col.name
                )));
            }
        }
        let targets: Vec<_> = self.columns.iter().filter(|c| c.target).collect();
        match targets.len() {
            0 => return Err(Error::Schema("schema declares no target column".into())),
            1 => {}
            n => {
                return Err(Error::Schema(format!(
                    "schema declares {n} target columns, expected exactly one"
                )))
            }
        }
        let target = targets[0];
        match (&target.positive, &target.negative) {
            (Some(p), Some(n)) if p == n => {
                return Err(Error::Schema(
                    "target positive and negative labels are identical".into(),
                ))
            }
            (Some(_), None) | (None, Some(_)) => {
                return Err(Error::Schema(
                    "target must declare both positive and negative labels, or neither \
                     (in which case values must be literal 0/1)"
                        .into(),
                ))
            }
            _ => {}
        }
        Ok(())
    }
}
