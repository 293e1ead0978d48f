use super::{MiningStats, TransactionView};
use crate::datamodel::Bitmap;
use crate::mapcode::Code;

/// One bit vector per code over the groups of a view.
///
/// Treating each code as a binary attribute of the groups, a code's extent is
/// the equivalence class of groups that carry it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemExtents {
    codes: Vec<Code>,
    extents: Vec<Bitmap>,
    n_groups: usize,
}

impl ItemExtents {
    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    pub fn n_groups(&self) -> usize {
        self.n_groups
    }

    pub fn extent(&self, code: Code) -> Option<&Bitmap> {
        self.codes.binary_search(&code).ok().map(|i| &self.extents[i])
    }

    pub(crate) fn by_index(&self, i: usize) -> &Bitmap {
        &self.extents[i]
    }

    /// Support count of a set of codes: population count of the AND of their extents.
    pub fn support_count(&self, codes: &[Code]) -> Option<u64> {
        let mut it = codes.iter();
        let Some(first) = it.next() else {
            return Some(self.n_groups as u64);
        };
        let mut acc = self.extent(*first)?.clone();
        for c in it {
            acc.and_assign(self.extent(*c)?);
        }
        Some(acc.count_ones() as u64)
    }
}

/// Builds the extents with a single pass over the groups.
pub fn build_item_extents(view: &TransactionView, stats: &mut MiningStats) -> ItemExtents {
    let n = view.len();
    let mut extents = vec![Bitmap::zeros(n); view.code_universe().len()];
    for (g, codes) in view.dense_groups().iter().enumerate() {
        for &i in codes {
            extents[i].set(g);
        }
    }
    stats.full_scans_of_groups += 1;
    ItemExtents {
        codes: view.code_universe().to_vec(),
        extents,
        n_groups: n,
    }
}
