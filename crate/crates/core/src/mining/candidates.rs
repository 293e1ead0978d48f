use std::collections::HashSet;

/// A level-k candidate produced by joining `prev[parent]` with one more item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub items: Vec<usize>,
    pub parent: usize,
}

/// Apriori join and prune.
///
/// `prev` holds the frequent (k-1)-itemsets in ascending lexicographic order.
/// Two of them sharing their first k-2 items are merged; the result survives
/// only if every (k-1)-subset is in `prev`. Candidates come out in ascending
/// lexicographic order. Returns the candidates and the joined/pruned counts.
pub(crate) fn apriori_gen(prev: &[Vec<usize>]) -> (Vec<Candidate>, u64, u64) {
    let frequent: HashSet<&[usize]> = prev.iter().map(Vec::as_slice).collect();
    let mut out = Vec::new();
    let (mut joined, mut pruned) = (0u64, 0u64);
    let mut block_start = 0;
    while block_start < prev.len() {
        let k1 = prev[block_start].len();
        let prefix = &prev[block_start][..k1 - 1];
        let mut block_end = block_start + 1;
        while block_end < prev.len() && &prev[block_end][..k1 - 1] == prefix {
            block_end += 1;
        }
        for i in block_start..block_end {
            for j in i + 1..block_end {
                joined += 1;
                let mut items = prev[i].clone();
                items.push(*prev[j].last().expect("non-empty itemset"));
                // The two parents are the subsets dropping the last and
                // second-to-last item; check the rest.
                let mut subset = Vec::with_capacity(k1);
                let all_frequent = (0..items.len().saturating_sub(2)).all(|skip| {
                    subset.clear();
                    subset.extend(items.iter().enumerate().filter(|(p, _)| *p != skip).map(|(_, &x)| x));
                    frequent.contains(subset.as_slice())
                });
                if all_frequent {
                    out.push(Candidate { items, parent: i });
                } else {
                    pruned += 1;
                }
            }
        }
        block_start = block_end;
    }
    (out, joined, pruned)
}
