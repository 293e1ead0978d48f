use std::time::Instant;

use rayon::prelude::*;

use super::candidates::{apriori_gen, Candidate};
use super::{
    build_item_extents, canonical_order, support_threshold, to_itemset, FrequentItemset, ItemExtents, MiningError,
    MiningOptions, MiningStats, TransactionView,
};
use crate::datamodel::Bitmap;
use crate::ratio::Fraction;

/// Equivalence-class frequent-itemset generation, counted serially.
pub fn fi_gen(view: &TransactionView, minsup: Fraction) -> Result<(Vec<FrequentItemset>, MiningStats), MiningError> {
    fi_gen_with(view, minsup, &MiningOptions::default())
}

/// Finds every itemset with support `>= minsup`.
///
/// Level 1 comes from the item extents (the only pass over the groups).
/// Level k candidates are Apriori join + prune of level k-1, and each is
/// counted as the population count of its parent's extent AND the extent of
/// its last code.
pub fn fi_gen_with(
    view: &TransactionView,
    minsup: Fraction,
    options: &MiningOptions,
) -> Result<(Vec<FrequentItemset>, MiningStats), MiningError> {
    let minsup = minsup.check_unit("minsup")?;
    let start = Instant::now();
    let pool = options.pool()?;
    let mut stats = MiningStats::default();
    let extents = build_item_extents(view, &mut stats);
    let threshold = support_threshold(minsup, view.len());

    let mut result = Vec::new();
    let mut level_items: Vec<Vec<usize>> = Vec::new();
    let mut level_extents: Vec<Bitmap> = Vec::new();
    stats.candidates_generated += extents.codes().len() as u64;
    for i in 0..extents.codes().len() {
        let ext = extents.by_index(i);
        let count = ext.count_ones() as u64;
        if count >= threshold {
            result.push(to_itemset(view, &[i], count));
            level_items.push(vec![i]);
            level_extents.push(ext.clone());
        }
    }

    while level_items.len() > 1 {
        let (candidates, joined, pruned) = apriori_gen(&level_items);
        stats.candidates_generated += joined;
        stats.candidates_pruned += pruned;
        if candidates.is_empty() {
            break;
        }
        let counted = count_candidates(&candidates, &level_extents, &extents, threshold, pool.as_ref());
        level_items = Vec::with_capacity(counted.len());
        level_extents = Vec::with_capacity(counted.len());
        for (cand, ext, count) in counted {
            result.push(to_itemset(view, &cand.items, count));
            level_items.push(cand.items);
            level_extents.push(ext);
        }
    }

    canonical_order(&mut result);
    stats.elapsed = start.elapsed();
    Ok((result, stats))
}

// Returns the frequent candidates with their extents, in candidate order.
fn count_candidates(
    candidates: &[Candidate],
    parent_extents: &[Bitmap],
    extents: &ItemExtents,
    threshold: u64,
    pool: Option<&rayon::ThreadPool>,
) -> Vec<(Candidate, Bitmap, u64)> {
    let eval = |cand: &Candidate| {
        let last = *cand.items.last().expect("non-empty candidate");
        let ext = parent_extents[cand.parent].and(extents.by_index(last));
        let count = ext.count_ones() as u64;
        (count >= threshold).then(|| (cand.clone(), ext, count))
    };
    match pool {
        None => candidates.iter().filter_map(eval).collect(),
        Some(pool) => pool.install(|| candidates.par_iter().filter_map(eval).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Fraction {
        Fraction::new(1, 2).unwrap()
    }

    // a=1, b=2, c=3
    fn four_groups() -> TransactionView {
        TransactionView::from_baskets(&[vec![1, 2, 3], vec![1, 2], vec![1, 3], vec![2]])
    }

    fn summary(fis: &[FrequentItemset]) -> Vec<(Vec<u32>, u64)> {
        fis.iter()
            .map(|f| (f.items.iter().map(|c| c.get()).collect(), f.support_count))
            .collect()
    }

    #[test]
    fn four_group_example() {
        let (fis, stats) = fi_gen(&four_groups(), half()).unwrap();
        assert_eq!(
            summary(&fis),
            vec![
                (vec![1], 3),
                (vec![2], 3),
                (vec![3], 2),
                (vec![1, 2], 2),
                (vec![1, 3], 2),
            ]
        );
        assert_eq!(fis[0].support, 0.75);
        assert_eq!(fis[2].support, 0.5);
        assert_eq!(stats.full_scans_of_groups, 1);
        assert_eq!(fis[3].level(), 2);
    }

    #[test]
    fn unanimity_threshold() {
        let view = TransactionView::from_baskets(&[vec![1, 2, 4], vec![1, 2], vec![1, 2, 3]]);
        let (fis, _) = fi_gen(&view, Fraction::ONE).unwrap();
        assert_eq!(summary(&fis), vec![(vec![1], 3), (vec![2], 3), (vec![1, 2], 3)]);
    }

    #[test]
    fn empty_view_yields_nothing() {
        let (fis, stats) = fi_gen(&TransactionView::default(), half()).unwrap();
        assert!(fis.is_empty());
        assert_eq!(stats.full_scans_of_groups, 1);
    }

    #[test]
    fn minsup_range_is_checked() {
        let zero = Fraction::new(0, 1).unwrap();
        assert!(fi_gen(&four_groups(), zero).is_err());
        assert!(fi_gen(&four_groups(), Fraction::new(11, 10).unwrap()).is_err());
    }

    #[test]
    fn parallel_counting_matches_serial() {
        let baskets: Vec<Vec<u32>> = (0..60u32)
            .map(|g| {
                (1..=9)
                    .filter(|c| (g * 7 + c * 3) % (c + 1) < 2 || g % c == 0)
                    .collect()
            })
            .collect();
        let view = TransactionView::from_baskets(&baskets);
        let minsup = Fraction::new(1, 10).unwrap();
        let (serial, s1) = fi_gen(&view, minsup).unwrap();
        for threads in [2, 4] {
            let (par, s2) = fi_gen_with(&view, minsup, &MiningOptions::threads(threads)).unwrap();
            assert_eq!(serial, par);
            assert_eq!(
                (s1.candidates_generated, s1.candidates_pruned),
                (s2.candidates_generated, s2.candidates_pruned)
            );
        }
        assert!(serial.iter().any(|f| f.level() >= 2));
        assert!(serial
            .iter()
            .all(|f| view.count_containing(&f.items) == f.support_count));
    }
}
