//! Order-isomorphism search for small posets.
//!
//! Plain backtracking over elements in index order. Candidates are pruned by
//! a color refinement seeded with per-element invariants (sizes of the
//! principal up- and down-sets, cover degrees, height and depth), computed
//! jointly for both posets so that colors are comparable. Pruning never
//! removes a valid image, so the first bijection found is the
//! lexicographically least one.

use std::collections::BTreeMap;

use crate::poset::Poset;

/// Finds an order isomorphism `P -> Q`, returned as `map[p_index] = q_index`.
///
/// The result is the lexicographically least such bijection.
pub fn poset_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let n = p.len();
    let (cp, cq) = joint_colors(p, q);
    let mut sp = cp.clone();
    let mut sq = cq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| cq[j] == cp[i]).collect())
        .collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(p, q, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Name-level view of a bijection returned by [`poset_isomorphism`].
pub fn named_bijection(p: &Poset, q: &Poset, map: &[usize]) -> Vec<(String, String)> {
    map.iter()
        .enumerate()
        .map(|(i, &j)| (p.element_name(i).to_string(), q.element_name(j).to_string()))
        .collect()
}

/// True when `map` is a bijection preserving and reflecting the order.
pub fn is_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &j in map {
        if j >= q.len() || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

fn extend(
    p: &Poset,
    q: &Poset,
    candidates: &[Vec<usize>],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == map.len() {
        return true;
    }
    for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        let consistent = (0..i).all(|k| {
            let mk = map[k];
            p.leq(k, i) == q.leq(mk, j) && p.leq(i, k) == q.leq(j, mk)
        });
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if extend(p, q, candidates, i + 1, map, used) {
            return true;
        }
        used[j] = false;
    }
    map[i] = usize::MAX;
    false
}

type Signature = (usize, usize, usize, usize, usize, usize);

fn base_signature(p: &Poset) -> Vec<Signature> {
    let heights = p.heights();
    let depths = p.depths();
    (0..p.len())
        .map(|i| {
            (
                p.count_below(i),
                p.count_above(i),
                p.lower_covers(i).len(),
                p.upper_covers(i).len(),
                heights[i],
                depths[i],
            )
        })
        .collect()
}

fn joint_colors(p: &Poset, q: &Poset) -> (Vec<usize>, Vec<usize>) {
    let mut table = BTreeMap::new();
    let mut intern = |sig: Signature| {
        let next = table.len();
        *table.entry(sig).or_insert(next)
    };
    let mut cp: Vec<usize> = base_signature(p).into_iter().map(&mut intern).collect();
    let mut cq: Vec<usize> = base_signature(q).into_iter().map(&mut intern).collect();
    let mut classes = distinct(&cp, &cq);
    loop {
        let mut table = BTreeMap::new();
        let mut refine = |poset: &Poset, colors: &[usize]| -> Vec<usize> {
            (0..poset.len())
                .map(|i| {
                    let mut ups: Vec<usize> =
                        poset.upper_covers(i).iter().map(|&j| colors[j]).collect();
                    let mut downs: Vec<usize> =
                        poset.lower_covers(i).iter().map(|&j| colors[j]).collect();
                    ups.sort_unstable();
                    downs.sort_unstable();
                    let key = (colors[i], ups, downs);
                    let next = table.len();
                    *table.entry(key).or_insert(next)
                })
                .collect()
        };
        let np = refine(p, &cp);
        let nq = refine(q, &cq);
        let refined = distinct(&np, &nq);
        cp = np;
        cq = nq;
        if refined == classes {
            break;
        }
        classes = refined;
    }
    (cp, cq)
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_are_isomorphic_by_identity() {
        let map = poset_isomorphism(&Poset::chain(3), &Poset::chain(3)).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn chain_vs_antichain() {
        assert!(poset_isomorphism(&Poset::chain(3), &Poset::antichain(3)).is_none());
        assert!(poset_isomorphism(&Poset::chain(3), &Poset::chain(4)).is_none());
    }

    #[test]
    fn least_bijection_on_antichain() {
        let map = poset_isomorphism(&Poset::antichain(3), &Poset::antichain(3)).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn relabeled_v_shape() {
        let x = Poset::new("X", &["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
        let y = Poset::new("Y", &["top", "l", "r"], &[("l", "top"), ("r", "top")]).unwrap();
        let map = poset_isomorphism(&x, &y).unwrap();
        assert_eq!(map, vec![1, 0, 2]);
        assert!(is_isomorphism(&x, &y, &map));
        assert_eq!(
            named_bijection(&x, &y, &map),
            vec![
                ("a".to_string(), "l".to_string()),
                ("b".to_string(), "top".to_string()),
                ("c".to_string(), "r".to_string())
            ]
        );
    }

    #[test]
    fn same_invariants_different_shape() {
        // two 3-chains side by side vs a 2-chain plus a 4-chain share sizes but not shape
        let a = Poset::new(
            "a",
            &["1", "2", "3", "4", "5", "6"],
            &[("1", "2"), ("2", "3"), ("4", "5"), ("5", "6")],
        )
        .unwrap();
        let b = Poset::new(
            "b",
            &["1", "2", "3", "4", "5", "6"],
            &[("1", "2"), ("3", "4"), ("4", "5"), ("5", "6")],
        )
        .unwrap();
        assert!(poset_isomorphism(&a, &b).is_none());
        assert!(poset_isomorphism(&a, &a).is_some());
    }
}
