//! Exhaustive generation of small posets, one per isomorphism class.
//!
//! Every finite poset has a linear extension, so every class is represented
//! by a naturally labeled order (`i < j` only when `i` precedes `j`). The
//! generator walks all strict relations on index pairs `i < j` as bitmasks,
//! keeps the transitive ones and deduplicates them up to isomorphism.

use std::collections::HashMap;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::iso::poset_isomorphism;
use crate::poset::Poset;

/// Default element names: `a, b, c, ...`.
pub fn letter_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

/// All posets on `n` elements up to isomorphism, in order of discovery.
pub fn enumerate_posets(n: usize, caps: &Caps) -> Result<Vec<Poset>> {
    if n > caps.generated_poset {
        return Err(Error::cap("generated poset size", caps.generated_poset, n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pair_index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let bit = |i: usize, j: usize| 1u64 << pair_index[&(i, j)];

    let mut reps: Vec<Poset> = Vec::new();
    let mut buckets: HashMap<InvariantKey, Vec<usize>> = HashMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel = |i: usize, j: usize| i == j || (i < j && mask & bit(i, j) != 0);
        let transitive = (0..n).all(|i| {
            (i + 1..n).all(|j| !rel(i, j) || (j + 1..n).all(|k| !rel(j, k) || rel(i, k)))
        });
        if !transitive {
            continue;
        }
        let p = Poset::from_fn_unchecked(&format!("P{n}_{}", reps.len()), letter_names(n), rel);
        let key = invariant_key(&p);
        let bucket = buckets.entry(key).or_default();
        if bucket
            .iter()
            .any(|&r| poset_isomorphism(&reps[r], &p).is_some())
        {
            continue;
        }
        bucket.push(reps.len());
        reps.push(p);
    }
    Ok(reps)
}

type InvariantKey = Vec<(usize, usize, usize, usize)>;

fn invariant_key(p: &Poset) -> InvariantKey {
    let mut key: Vec<_> = (0..p.len())
        .map(|i| {
            (
                p.count_below(i),
                p.count_above(i),
                p.lower_covers(i).len(),
                p.upper_covers(i).len(),
            )
        })
        .collect();
    key.sort_unstable();
    key
}
