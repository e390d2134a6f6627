//! Test corpora: small lattices from the poset generator, and seeded random
//! posets, fuzzy up-sets and monotonic operators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::birkhoff::upset_lattice;
use crate::bits::ElemSet;
use crate::config::Caps;
use crate::error::Result;
use crate::fuzzy::FuzzyUpSet;
use crate::generate::{enumerate_posets, letter_names};
use crate::lattice::{lattice_isomorphism, Lattice};
use crate::poset::Poset;
use crate::quotient::MonotonicOperator;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairwise non-isomorphic lattices: every generated poset with at most
/// `max_order` elements that is a lattice, and `F_X` for every generated
/// `X` with at most `max_carrier` elements.
pub fn lattice_corpus(max_order: usize, max_carrier: usize, caps: &Caps) -> Result<Vec<Lattice>> {
    let mut out: Vec<Lattice> = Vec::new();
    let mut push = |l: Lattice| {
        if !out
            .iter()
            .any(|o| o.len() == l.len() && lattice_isomorphism(o, &l).is_some())
        {
            out.push(l);
        }
    };
    for n in 1..=max_order {
        for p in enumerate_posets(n, caps)? {
            if let Ok(l) = Lattice::from_poset(p) {
                push(l);
            }
        }
    }
    for n in 0..=max_carrier {
        for x in enumerate_posets(n, caps)? {
            push(upset_lattice(&x, caps)?.lattice);
        }
    }
    Ok(out)
}

/// A random naturally labeled poset: each pair `i < j` is related with
/// probability `density` before taking the transitive closure.
pub fn random_poset(n: usize, density: f64, rng: &mut impl Rng) -> Poset {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Poset::from_relation(&format!("R{n}"), letter_names(n), &edges).expect("edges go forward")
}

/// A random monotone map `X -> L`: elements are visited along a random
/// linear extension and each value starts at the join of the values below
/// and walks up a random number of covers.
pub fn random_monotone_map(x: &Poset, l: &Lattice, rng: &mut impl Rng) -> FuzzyUpSet {
    let order = random_linear_extension(x, rng);
    let mut values = vec![usize::MAX; x.len()];
    for &e in &order {
        let floor = l.join_all(x.below(e).filter(|&y| y != e).map(|y| values[y]));
        let mut v = floor;
        let steps = match rng.gen_range(0..4) {
            0 => 0,
            1 => 1,
            2 => rng.gen_range(0..=2),
            _ => rng.gen_range(0..=l.len()),
        };
        for _ in 0..steps {
            match l.order().upper_covers(v).choose(rng) {
                Some(&next) => v = next,
                None => break,
            }
        }
        values[e] = v;
    }
    FuzzyUpSet::new(x.clone(), l.clone(), values).expect("values respect the order")
}

/// A random monotonic operator on `X`: elements are visited top-down and
/// each value is the union of the values above plus random extras, so that
/// both collisions and strict growth occur.
pub fn random_monotone_operator(x: &Poset, rng: &mut impl Rng) -> MonotonicOperator {
    let mut order = random_linear_extension(x, rng);
    order.reverse();
    let mut values = vec![ElemSet::EMPTY; x.len()];
    let extra = rng.gen_range(0.0..0.6);
    for &e in &order {
        let mut v = x
            .above(e)
            .filter(|&y| y != e)
            .fold(ElemSet::EMPTY, |acc, y| acc.union(values[y]));
        if !rng.gen_bool(0.3) {
            for k in 0..x.len() {
                if rng.gen_bool(extra) {
                    v.insert(k);
                }
            }
        }
        values[e] = v;
    }
    MonotonicOperator::new("G", x.clone(), values).expect("values respect the order")
}

fn random_linear_extension(x: &Poset, rng: &mut impl Rng) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..x.len()).map(|i| x.count_below(i) - 1).collect();
    let mut ready: Vec<usize> = (0..x.len()).filter(|&i| remaining[i] == 0).collect();
    let mut out = Vec::with_capacity(x.len());
    while !ready.is_empty() {
        let pick = rng.gen_range(0..ready.len());
        let e = ready.swap_remove(pick);
        out.push(e);
        for y in x.above(e).filter(|&y| y != e) {
            remaining[y] -= 1;
            if remaining[y] == 0 {
                ready.push(y);
            }
        }
    }
    out
}
