//! Frequent-itemset engines over a transaction view.
//!
//! * [`fi_gen`] builds one bitmap extent per code in a single pass over the
//!   groups and counts every later candidate by intersecting extents.
//! * [`apriori_baseline`] is the classic level-wise algorithm that rescans all
//!   groups once per level.
//! * [`brute_force_frequent`] enumerates every subset of a small code universe.
//!
//! All three return itemsets ordered by level, then by code.

mod apriori;
mod brute;
mod candidates;
mod extents;
mod fi_gen;
mod view;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mapcode::Code;
use crate::ratio::{Fraction, FractionError};

pub use apriori::{apriori_baseline, apriori_baseline_with};
pub use brute::{brute_force_frequent, BRUTE_FORCE_MAX_CODES};
pub use extents::{build_item_extents, ItemExtents};
pub use fi_gen::{fi_gen, fi_gen_with};
pub use view::{group_by_key, TransactionView};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MiningError {
    #[error(transparent)]
    MinSupport(#[from] FractionError),
    #[error("code universe has {size} codes; brute force is limited to {max}")]
    UniverseTooLarge { size: usize, max: usize },
    #[error("key value {0:?} occurs in more than one group")]
    DuplicateKey(String),
    #[error("failed to start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequentItemset {
    /// Codes in ascending order.
    pub items: Vec<Code>,
    pub support_count: u64,
    /// `support_count / number of groups`.
    pub support: f64,
}

impl FrequentItemset {
    pub fn level(&self) -> usize {
        self.items.len()
    }
}

/// Instrumentation collected while mining.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningStats {
    /// Passes that visited every transaction group once.
    pub full_scans_of_groups: u64,
    /// Candidates produced by the join step, including level-1 singletons.
    pub candidates_generated: u64,
    /// Joined candidates discarded because some subset was infrequent.
    pub candidates_pruned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// How candidate support counting is spread across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Parallelism {
    #[default]
    Serial,
    Threads(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MiningOptions {
    pub parallelism: Parallelism,
}

impl MiningOptions {
    pub fn threads(n: usize) -> Self {
        MiningOptions {
            parallelism: if n <= 1 {
                Parallelism::Serial
            } else {
                Parallelism::Threads(n)
            },
        }
    }

    pub(crate) fn pool(&self) -> Result<Option<rayon::ThreadPool>, MiningError> {
        match self.parallelism {
            Parallelism::Serial => Ok(None),
            Parallelism::Threads(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(Some)
                .map_err(|e| MiningError::ThreadPool(e.to_string())),
        }
    }
}

/// Minimum group count for `minsup` over `n_groups`; never below 1.
pub(crate) fn support_threshold(minsup: Fraction, n_groups: usize) -> u64 {
    minsup.min_count(n_groups).max(1)
}

pub(crate) fn to_itemset(view: &TransactionView, items: &[usize], count: u64) -> FrequentItemset {
    let n = view.len();
    FrequentItemset {
        items: items.iter().map(|&i| view.code_universe()[i]).collect(),
        support_count: count,
        support: if n == 0 { 0.0 } else { count as f64 / n as f64 },
    }
}

pub(crate) fn canonical_order(itemsets: &mut [FrequentItemset]) {
    itemsets.sort_by(|a, b| a.items.len().cmp(&b.items.len()).then_with(|| a.items.cmp(&b.items)));
}
