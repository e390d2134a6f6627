//! Sub-families of a set family closed under union and intersection.
//!
//! Closed sub-families of a host family (itself closed under both
//! operations) are the closed sets of a closure operator on the host's
//! index set, so they are enumerated with Ganter's NextClosure: each one is
//! produced exactly once and no deduplication pass is needed.

use crate::bits::ElemSet;
use crate::birkhoff::UpSetFamily;
use crate::config::Caps;
use crate::error::{Error, Result};

/// Closes `sets` under pairwise union and intersection; sorted output.
pub fn close_sets(sets: impl IntoIterator<Item = ElemSet>) -> Vec<ElemSet> {
    let mut out: Vec<ElemSet> = sets.into_iter().collect();
    out.sort_unstable();
    out.dedup();
    let mut seen: std::collections::HashSet<ElemSet> = out.iter().copied().collect();
    let mut i = 0;
    while i < out.len() {
        let a = out[i];
        for j in 0..=i {
            let b = out[j];
            for c in [a.union(b), a.intersection(b)] {
                if seen.insert(c) {
                    out.push(c);
                }
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// True when `sets` is closed under pairwise union and intersection.
pub fn is_closed(sets: &[ElemSet]) -> bool {
    let set: std::collections::HashSet<ElemSet> = sets.iter().copied().collect();
    sets.iter().all(|&a| {
        sets.iter()
            .all(|&b| set.contains(&a.union(b)) && set.contains(&a.intersection(b)))
    })
}

/// Union and intersection of host members, tabulated by index.
struct Tables {
    m: usize,
    union: Vec<u8>,
    inter: Vec<u8>,
}

impl Tables {
    fn new(sets: &[ElemSet]) -> Result<Tables> {
        let m = sets.len();
        let mut union = vec![0u8; m * m];
        let mut inter = vec![0u8; m * m];
        let index = |s: ElemSet| sets.binary_search(&s).ok();
        for i in 0..m {
            for j in 0..m {
                let (u, n) = match (index(sets[i].union(sets[j])), index(sets[i].intersection(sets[j]))) {
                    (Some(u), Some(n)) => (u, n),
                    _ => {
                        return Err(Error::PreconditionFailed(
                            "host family is not closed under union and intersection".into(),
                        ))
                    }
                };
                union[i * m + j] = u as u8;
                inter[i * m + j] = n as u8;
            }
        }
        Ok(Tables { m, union, inter })
    }

    fn close(&self, start: u64) -> u64 {
        let mut members: Vec<usize> = ElemSet::from_bits(start).iter().collect();
        let mut mask = start;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [self.union[a * self.m + b], self.inter[a * self.m + b]] {
                    let bit = 1u64 << c;
                    if mask & bit == 0 {
                        mask |= bit;
                        members.push(c as usize);
                    }
                }
            }
            i += 1;
        }
        mask
    }
}

/// Which closed sub-families to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounds {
    /// Only those containing `∅` and the carrier.
    Required,
    /// All of them with at least two members.
    AtLeastTwo,
}

/// All sub-families of `host` closed under union and intersection, sorted by
/// size and then lexicographically by their (sorted) member lists.
pub fn sublattices(host: &UpSetFamily, bounds: Bounds, caps: &Caps) -> Result<Vec<Vec<ElemSet>>> {
    caps.check_family(host.len())?;
    let sets = host.sets();
    let tables = Tables::new(sets)?;
    let m = sets.len();
    let base = match bounds {
        Bounds::Required => {
            let (Some(e), Some(f)) = (host.position(ElemSet::EMPTY), host.position(host.full_set()))
            else {
                return Err(Error::PreconditionFailed(
                    "host family lacks the empty set or the carrier".into(),
                ));
            };
            (1u64 << e) | (1u64 << f)
        }
        Bounds::AtLeastTwo => 0,
    };

    let mut found: Vec<u64> = Vec::new();
    let mut current = tables.close(base);
    loop {
        found.push(current);
        if found.len() > caps.sublattices {
            return Err(Error::cap("sublattice count", caps.sublattices, found.len()));
        }
        match next_closure(&tables, m, base, current) {
            Some(next) => current = next,
            None => break,
        }
    }

    let min_size = if bounds == Bounds::AtLeastTwo { 2 } else { 0 };
    let mut out: Vec<Vec<ElemSet>> = found
        .into_iter()
        .filter(|mask| mask.count_ones() as usize >= min_size)
        .map(|mask| ElemSet::from_bits(mask).iter().map(|i| sets[i]).collect())
        .collect();
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

// Lectic successor, with smaller indices more significant. Every closure
// includes `base`.
fn next_closure(tables: &Tables, m: usize, base: u64, current: u64) -> Option<u64> {
    for i in (0..m).rev() {
        let bit = 1u64 << i;
        if current & bit != 0 {
            continue;
        }
        let below = bit - 1;
        let candidate = tables.close((current & below) | bit | base);
        if candidate & below == current & below {
            return Some(candidate);
        }
    }
    None
}
