//! Mapping codes: one short code per distinct combination of selected
//! dimension values, the `(key, code)` table built from them, and decoding of
//! mined code itemsets back to dimension values.

mod combine;
mod registry;

use thiserror::Error;

pub use combine::{combine_dims, combine_dims_with, CombineOptions, MdTable};
pub use registry::{transform_map_code, Code, DimValue, LargeItemset, MapCodeRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapCodeError {
    #[error("unknown attribute {0:?} in the general table")]
    UnknownAttribute(String),
    #[error("attribute {0:?} is not categorical; discretize it first")]
    NotCategorical(String),
    #[error("key dimension {0:?} cannot also be a combined dimension")]
    KeyInSelection(String),
    #[error("at least one dimension must be selected for combination")]
    EmptySelection,
    #[error("dimension {0:?} selected more than once")]
    DuplicateSelection(String),
    #[error("mapping code {0} is not in the registry")]
    UnknownCode(String),
    #[error("cannot parse {0:?} as a mapping code")]
    BadCode(String),
}
