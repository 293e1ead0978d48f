use super::{canonical_order, support_threshold, to_itemset, FrequentItemset, MiningError, TransactionView};
use crate::ratio::Fraction;

pub const BRUTE_FORCE_MAX_CODES: usize = 20;

/// Enumerates every non-empty subset of the code universe and counts it by
/// direct containment. Thresholds above 1 simply yield nothing.
pub fn brute_force_frequent(view: &TransactionView, minsup: Fraction) -> Result<Vec<FrequentItemset>, MiningError> {
    let n = view.code_universe().len();
    if n > BRUTE_FORCE_MAX_CODES {
        return Err(MiningError::UniverseTooLarge {
            size: n,
            max: BRUTE_FORCE_MAX_CODES,
        });
    }
    let masks: Vec<u32> = view
        .dense_groups()
        .iter()
        .map(|g| g.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    let threshold = support_threshold(minsup, view.len());
    let mut out = Vec::new();
    for subset in 1u32..(1u32 << n) {
        let count = masks.iter().filter(|&&m| m & subset == subset).count() as u64;
        if count >= threshold {
            let items: Vec<usize> = (0..n).filter(|i| subset & (1 << i) != 0).collect();
            out.push(to_itemset(view, &items, count));
        }
    }
    canonical_order(&mut out);
    Ok(out)
}
