//! Tabular data handling: schemas, column-major tables, stratified splits,
//! group partitions, model-ready encodings, and a synthetic census generator.

mod binning;
mod encode;
mod load;
mod schema;
mod split;
pub mod synth;
mod table;

pub use binning::{
    bin_feature, default_partition, BinStrategy, Group, GroupPartition, GroupSpec,
    DEFAULT_MIN_GROUP_SIZE, DEFAULT_QUANTILE_BINS,
};
pub use encode::{encode, EncodeMode, EncodedMatrix, Encoder};
pub use load::load_table;
pub use schema::{ColumnDecl, Schema};
pub use split::{split, subsample};
pub use table::{Column, ColumnData, ColumnKind, DataTable};
