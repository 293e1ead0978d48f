use std::time::Instant;

use rayon::prelude::*;

use super::candidates::apriori_gen;
use super::{
    canonical_order, support_threshold, to_itemset, FrequentItemset, MiningError, MiningOptions, MiningStats,
    TransactionView,
};
use crate::ratio::Fraction;

pub fn apriori_baseline(
    view: &TransactionView,
    minsup: Fraction,
) -> Result<(Vec<FrequentItemset>, MiningStats), MiningError> {
    apriori_baseline_with(view, minsup, &MiningOptions::default())
}

/// Classic level-wise Apriori: every level with a non-empty candidate set
/// rescans all groups and tests each candidate for containment.
pub fn apriori_baseline_with(
    view: &TransactionView,
    minsup: Fraction,
    options: &MiningOptions,
) -> Result<(Vec<FrequentItemset>, MiningStats), MiningError> {
    let minsup = minsup.check_unit("minsup")?;
    let start = Instant::now();
    let pool = options.pool()?;
    let mut stats = MiningStats::default();
    let threshold = support_threshold(minsup, view.len());
    let groups = view.dense_groups();
    let n_codes = view.code_universe().len();

    let mut result = Vec::new();
    let mut level: Vec<Vec<usize>> = Vec::new();
    if n_codes > 0 {
        stats.candidates_generated += n_codes as u64;
        let mut counts = vec![0u64; n_codes];
        for g in groups {
            for &i in g {
                counts[i] += 1;
            }
        }
        stats.full_scans_of_groups += 1;
        for (i, &count) in counts.iter().enumerate() {
            if count >= threshold {
                result.push(to_itemset(view, &[i], count));
                level.push(vec![i]);
            }
        }
    }

    while level.len() > 1 {
        let (candidates, joined, pruned) = apriori_gen(&level);
        stats.candidates_generated += joined;
        stats.candidates_pruned += pruned;
        if candidates.is_empty() {
            break;
        }
        let items: Vec<&[usize]> = candidates.iter().map(|c| c.items.as_slice()).collect();
        let counts = match pool.as_ref() {
            None => scan(groups, &items),
            Some(pool) => pool.install(|| {
                let chunk = groups.len().div_ceil(pool.current_num_threads()).max(1);
                groups.par_chunks(chunk).map(|part| scan(part, &items)).reduce(
                    || vec![0; items.len()],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
            }),
        };
        stats.full_scans_of_groups += 1;
        level = Vec::new();
        for (cand, count) in candidates.into_iter().zip(counts) {
            if count >= threshold {
                result.push(to_itemset(view, &cand.items, count));
                level.push(cand.items);
            }
        }
    }

    canonical_order(&mut result);
    stats.elapsed = start.elapsed();
    Ok((result, stats))
}

fn scan(groups: &[Vec<usize>], candidates: &[&[usize]]) -> Vec<u64> {
    let mut counts = vec![0u64; candidates.len()];
    for g in groups {
        for (c, cand) in candidates.iter().enumerate() {
            if cand.len() <= g.len() && is_subset(cand, g) {
                counts[c] += 1;
            }
        }
    }
    counts
}

// Both slices ascending.
fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}
