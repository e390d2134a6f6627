//! Brute-force reference computations shared by the integration tests.
//! Each one works from definitions only, without the library's search code.

#![allow(dead_code)]

use std::path::PathBuf;

use finlat::{ElemSet, Lattice, MonotonicOperator, Poset};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn wedge() -> Poset {
    Poset::new("X", &["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap()
}

pub fn stem_square() -> Lattice {
    Lattice::from_poset(
        Poset::new(
            "L",
            &["0", "d", "a", "c", "1"],
            &[("0", "d"), ("d", "a"), ("d", "c"), ("a", "1"), ("c", "1")],
        )
        .unwrap(),
    )
    .unwrap()
}

pub fn square() -> Lattice {
    Lattice::from_poset(
        Poset::new(
            "L0",
            &["d", "a", "c", "1"],
            &[("d", "a"), ("d", "c"), ("a", "1"), ("c", "1")],
        )
        .unwrap(),
    )
    .unwrap()
}

pub fn set(p: &Poset, names: &[&str]) -> ElemSet {
    names.iter().map(|n| p.index_of(n).unwrap()).collect()
}

/// Every subset closed upward, by scanning all `2^n` subsets.
pub fn brute_upsets(p: &Poset) -> Vec<ElemSet> {
    let n = p.len();
    (0u64..(1 << n))
        .map(ElemSet::from_bits)
        .filter(|s| {
            s.iter()
                .all(|x| (0..n).all(|y| !p.leq(x, y) || s.contains(y)))
        })
        .collect()
}

/// Antichains, by scanning all subsets.
pub fn brute_antichains(p: &Poset) -> Vec<ElemSet> {
    let n = p.len();
    (0u64..(1 << n))
        .map(ElemSet::from_bits)
        .filter(|s| s.iter().all(|x| s.iter().all(|y| x == y || !p.comparable(x, y))))
        .collect()
}

/// Greatest lower bound of a subset of a lattice's order, from the order alone.
pub fn glb(l: &Lattice, items: ElemSet) -> usize {
    let n = l.len();
    let lower: Vec<usize> = (0..n).filter(|&c| items.iter().all(|i| l.leq(c, i))).collect();
    *lower
        .iter()
        .find(|&&c| lower.iter().all(|&d| l.leq(d, c)))
        .expect("finite lattice")
}

/// Meet and join of a pair from the order alone, for lattices of any size.
pub fn meet_by_order(l: &Lattice, a: usize, b: usize) -> usize {
    let lower: Vec<usize> = (0..l.len()).filter(|&c| l.leq(c, a) && l.leq(c, b)).collect();
    *lower.iter().find(|&&c| lower.iter().all(|&d| l.leq(d, c))).expect("finite lattice")
}

pub fn join_by_order(l: &Lattice, a: usize, b: usize) -> usize {
    let upper: Vec<usize> = (0..l.len()).filter(|&c| l.leq(a, c) && l.leq(b, c)).collect();
    *upper.iter().find(|&&c| upper.iter().all(|&d| l.leq(c, d))).expect("finite lattice")
}

pub fn lub(l: &Lattice, items: ElemSet) -> usize {
    let n = l.len();
    let upper: Vec<usize> = (0..n).filter(|&c| items.iter().all(|i| l.leq(i, c))).collect();
    *upper
        .iter()
        .find(|&&c| upper.iter().all(|&d| l.leq(c, d)))
        .expect("finite lattice")
}

/// Meet-irreducibles by the definition: `x = ⋀Q` forces `x ∈ Q`, over
/// every subset `Q` (so the top, the empty meet, is excluded).
pub fn brute_meet_irreducibles(l: &Lattice) -> Vec<usize> {
    let n = l.len();
    assert!(n <= 16);
    (0..n)
        .filter(|&x| {
            (0u64..(1 << n))
                .map(ElemSet::from_bits)
                .all(|q| glb(l, q) != x || q.contains(x))
        })
        .collect()
}

fn permutations(n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == used.len() {
            return visit(cur);
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                if !rec(cur, used, visit) {
                    return false;
                }
                cur.pop();
                used[i] = false;
            }
        }
        true
    }
    rec(&mut Vec::new(), &mut vec![false; n], visit);
}

/// Order isomorphism by trying every permutation; for small posets only.
pub fn brute_isomorphic(p: &Poset, q: &Poset) -> bool {
    if p.len() != q.len() {
        return false;
    }
    assert!(p.len() <= 9);
    let mut found = false;
    permutations(p.len(), &mut |perm| {
        if (0..perm.len()).all(|a| (0..perm.len()).all(|b| p.leq(a, b) == q.leq(perm[a], perm[b]))) {
            found = true;
            return false;
        }
        true
    });
    found
}

/// Injective maps `a -> b` preserving meets, joins and (optionally) bounds,
/// by trying every injection; for small lattices only.
pub fn brute_embeds(a: &Lattice, b: &Lattice, bounds: bool) -> bool {
    let (n, m) = (a.len(), b.len());
    if n > m {
        return false;
    }
    let mut map = vec![0usize; n];
    let mut used = vec![false; m];
    fn rec(a: &Lattice, b: &Lattice, bounds: bool, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if i == map.len() {
            let ok_bounds = !bounds || (map[a.bottom()] == b.bottom() && map[a.top()] == b.top());
            return ok_bounds
                && (0..map.len()).all(|x| {
                    (0..map.len()).all(|y| {
                        map[a.meet(x, y)] == b.meet(map[x], map[y]) && map[a.join(x, y)] == b.join(map[x], map[y])
                    })
                });
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                map[i] = v;
                if rec(a, b, bounds, i + 1, map, used) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    rec(a, b, bounds, 0, &mut map, &mut used)
}

/// Sub-families closed under union and intersection, by scanning all subsets.
pub fn brute_closed_subfamilies(host: &[ElemSet], require: &[ElemSet]) -> Vec<Vec<ElemSet>> {
    assert!(host.len() <= 20);
    let mut out = Vec::new();
    for mask in 0u64..(1 << host.len()) {
        let sub: Vec<ElemSet> = ElemSet::from_bits(mask).iter().map(|i| host[i]).collect();
        if !require.iter().all(|r| sub.contains(r)) {
            continue;
        }
        let closed = sub
            .iter()
            .all(|&a| sub.iter().all(|&b| sub.contains(&a.union(b)) && sub.contains(&a.intersection(b))));
        if closed {
            out.push(sub);
        }
    }
    out
}

/// Every monotonic operator on a small poset.
pub fn all_monotone_operators(x: &Poset) -> Vec<MonotonicOperator> {
    let n = x.len();
    let choices = 1u64 << n;
    let total = choices.pow(n as u32);
    assert!(total <= 1 << 16);
    (0..total)
        .filter_map(|code| {
            let values: Vec<ElemSet> = (0..n)
                .map(|i| ElemSet::from_bits((code / choices.pow(i as u32)) % choices))
                .collect();
            MonotonicOperator::new("G", x.clone(), values).ok()
        })
        .collect()
}

/// `S_T` for every up-set `T` of the quotient, from the definitions: the
/// classes are computed by grouping equal values and `T` ranges over all
/// subsets of classes that are upward closed under `G(x) ⊇ G(y)`.
pub fn brute_operator_family(g: &MonotonicOperator) -> Vec<ElemSet> {
    let n = g.carrier().len();
    let mut values: Vec<ElemSet> = g.values().to_vec();
    values.sort_unstable();
    values.dedup();
    let k = values.len();
    let mut out: Vec<ElemSet> = (0u64..(1 << k))
        .map(ElemSet::from_bits)
        .filter(|t| {
            t.iter()
                .all(|a| (0..k).all(|b| !values[a].is_superset(values[b]) || t.contains(b)))
        })
        .map(|t| {
            (0..n)
                .filter(|&x| t.iter().any(|c| values[c] == g.value(x)))
                .collect()
        })
        .collect();
    out.sort_unstable();
    out
}
