//! Tables, bitmaps and the rough-set information system shared by every stage.

mod bitmap;
mod encode;
mod infosys;
mod table;
mod value;

use thiserror::Error;

pub use bitmap::Bitmap;
pub use encode::{bitmap_encode, BitmapTable, Item};
pub use infosys::{build_information_system, partition_by_attributes, EquivalenceClassPartition, InformationSystem};
pub use table::{AttributeKind, AttributeSpec, Bin, GeneralTable, RelationalTable};
pub use value::Value;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataModelError {
    #[error("attribute {0:?} appears more than once in the schema")]
    DuplicateAttribute(String),
    #[error("attribute {name:?}: {reason}")]
    InvalidAttribute { name: String, reason: String },
    #[error("row {row}: expected {expected} values, found {found}")]
    RowArity { row: usize, expected: usize, found: usize },
    #[error("row {row}: value {value:?} does not match the kind of attribute {attribute:?}")]
    CellKind {
        row: usize,
        attribute: String,
        value: String,
    },
    #[error("unknown attribute {attribute:?} in {table}")]
    UnknownAttribute { table: String, attribute: String },
    #[error("attribute set must not be empty")]
    EmptyAttributeSet,
    #[error("attribute {0:?} is quantitative; discretize it before bitmap encoding")]
    NotCategorical(String),
    #[error("row {row}: value {value:?} is not in the declared domain of {attribute:?}")]
    OutsideDomain {
        attribute: String,
        value: String,
        row: usize,
    },
    #[error("object {object} does not carry exactly one item of attribute {attribute:?}")]
    NotOneHot { object: usize, attribute: String },
}
