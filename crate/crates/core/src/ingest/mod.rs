//! Loading flat files, joining them into the general table and discretizing
//! quantitative attributes.

mod csv;
mod discretize;
mod join;
mod mapping;

use thiserror::Error;

use crate::datamodel::DataModelError;

pub use self::csv::{load_csv, parse_csv, read_header};
pub use discretize::{discretize, discretize_all};
pub use join::{join_tables, JoinLink, JoinSpec};
pub use mapping::{apply_mapping_function, MappingFunction};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{table}: header {found:?} does not match schema {expected:?}")]
    HeaderMismatch {
        table: String,
        expected: Vec<String>,
        found: Vec<String>,
    },
    #[error("{table}: missing header row")]
    MissingHeader { table: String },
    #[error("{table} row {row}: expected {expected} fields, found {found}")]
    FieldCount {
        table: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table}: malformed CSV")]
    Malformed {
        table: String,
        #[source]
        source: ::csv::Error,
    },
    #[error("{table} row {row}: cannot parse {cell:?} as a number for attribute {attribute:?}")]
    BadNumber {
        table: String,
        row: usize,
        attribute: String,
        cell: String,
    },
    #[error("invalid join spec: {0}")]
    InvalidJoin(String),
    #[error("join {fact_key} -> {dim_table}.{dim_key}: fact keys without a dimension match: {keys:?}")]
    OrphanKeys {
        fact_key: String,
        dim_table: String,
        dim_key: String,
        keys: Vec<String>,
    },
    #[error("invalid mapping function: {0}")]
    InvalidMapping(String),
    #[error("mapping function has no entry for source tuple {0:?}")]
    UnmappedTuple(Vec<String>),
    #[error("attribute {attribute:?} cannot be discretized: {reason}")]
    NotDiscretizable { attribute: String, reason: String },
    #[error("row {row}: value {value} of {attribute:?} falls outside every bin")]
    OutsideBins { attribute: String, row: usize, value: f64 },
    #[error(transparent)]
    DataModel(#[from] DataModelError),
}
