use std::collections::{BTreeSet, HashMap};

use super::MiningError;
use crate::datamodel::Value;
use crate::mapcode::{Code, MdTable};

/// Transactions: one group per distinct key value with the set of codes it
/// carries. Groups keep first-occurrence order of their keys.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransactionView {
    groups: Vec<(Value, Vec<Code>)>,
    code_universe: Vec<Code>,
    // groups[g] as indices into code_universe, ascending
    dense: Vec<Vec<usize>>,
}

impl TransactionView {
    /// Builds a view from explicit groups. Keys must be unique; codes within a
    /// group are sorted and deduplicated.
    pub fn new(groups: Vec<(Value, Vec<Code>)>) -> Result<Self, MiningError> {
        let mut seen = std::collections::HashSet::new();
        for (k, _) in &groups {
            if !seen.insert(k) {
                return Err(MiningError::DuplicateKey(k.to_string()));
            }
        }
        Ok(Self::build(groups))
    }

    /// Groups keyed `T1, T2, ...` with codes given as integers.
    pub fn from_baskets(baskets: &[Vec<u32>]) -> Self {
        let groups = baskets
            .iter()
            .enumerate()
            .map(|(i, b)| {
                (
                    Value::text(format!("T{}", i + 1)),
                    b.iter().map(|&c| Code::new(c)).collect(),
                )
            })
            .collect();
        Self::build(groups)
    }

    fn build(mut groups: Vec<(Value, Vec<Code>)>) -> Self {
        let mut universe = BTreeSet::new();
        for (_, codes) in groups.iter_mut() {
            codes.sort_unstable();
            codes.dedup();
            universe.extend(codes.iter().copied());
        }
        let code_universe: Vec<Code> = universe.into_iter().collect();
        let dense = groups
            .iter()
            .map(|(_, codes)| {
                codes
                    .iter()
                    .map(|c| code_universe.binary_search(c).expect("code in universe"))
                    .collect()
            })
            .collect();
        TransactionView {
            groups,
            code_universe,
            dense,
        }
    }

    pub fn groups(&self) -> &[(Value, Vec<Code>)] {
        &self.groups
    }

    /// All codes present in some group, ascending.
    pub fn code_universe(&self) -> &[Code] {
        &self.code_universe
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub(crate) fn dense_groups(&self) -> &[Vec<usize>] {
        &self.dense
    }

    /// Number of groups containing every code in `codes`, by direct lookup.
    pub fn count_containing(&self, codes: &[Code]) -> u64 {
        self.groups
            .iter()
            .filter(|(_, g)| codes.iter().all(|c| g.binary_search(c).is_ok()))
            .count() as u64
    }
}

/// Collects each distinct key value (first-occurrence order) with the union
/// of its codes.
pub fn group_by_key(md: &MdTable) -> TransactionView {
    let mut key_index: HashMap<&Value, usize> = HashMap::new();
    let mut groups: Vec<(Value, Vec<Code>)> = Vec::new();
    for (key, code) in &md.rows {
        let g = *key_index.entry(key).or_insert_with(|| {
            groups.push((key.clone(), Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(*code);
    }
    TransactionView::build(groups)
}
