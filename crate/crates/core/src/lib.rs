//! Hybrid-dimension association rule mining over star-schema data.
//!
//! The pipeline joins fact and dimension tables into one general table,
//! combines selected dimensions into mapping codes, groups codes into
//! transactions keyed by a key dimension, mines frequent itemsets by
//! intersecting per-code bitmaps (one scan of the transactions), decodes the
//! codes back to dimension values and derives association rules that respect
//! a per-dimension repetition policy.
//!
//! A level-wise Apriori baseline and a brute-force enumerator are provided
//! next to the bitmap engine so results can be checked against each other.
//!
//! ```
//! use rshar_core::mining::{fi_gen, TransactionView};
//! use rshar_core::Fraction;
//!
//! let view = TransactionView::from_baskets(&[vec![1, 2, 3], vec![1, 2], vec![1, 3], vec![2]]);
//! let (frequent, stats) = fi_gen(&view, Fraction::new(1, 2).unwrap()).unwrap();
//! assert_eq!(frequent.len(), 5);
//! assert_eq!(stats.full_scans_of_groups, 1);
//! ```

pub mod datamodel;
pub mod error;
pub mod ingest;
pub mod mapcode;
pub mod mining;
pub mod ratio;
pub mod rules;

pub use error::{Error, Result};
pub use ratio::Fraction;
