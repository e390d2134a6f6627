//! Finite lattices and the order-theoretic predicates used by the
//! representation theorems.
//!
//! A note on distributivity. For a finite lattice every join `⋁S` is a finite
//! join, so the infinite law `x ∧ ⋁S = ⋁(x ∧ s)` follows from the binary law
//! `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` by induction on `|S|` (with `⋁∅ = 0`
//! handled by `x ∧ 0 = 0`). The binary law is self-dual, so the dual infinite
//! law coincides with it as well. [`Lattice::is_distributive`] therefore
//! decides infinite distributivity and dual infinite distributivity at once.
//!
//! Empty meets and joins follow the usual convention: `⋀∅` is the top and
//! `⋁∅` is the bottom.

use std::fmt;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::iso::poset_isomorphism;
use crate::poset::Poset;

/// Outcome of a predicate that can name a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Completely meet-irreducible elements of a lattice, ascending by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetIrreducibles {
    pub members: Vec<usize>,
}

impl MeetIrreducibles {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    order: Poset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("order", &self.order)
            .field("bottom", &self.order.element_name(self.bottom))
            .field("top", &self.order.element_name(self.top))
            .finish()
    }
}

impl Lattice {
    /// Checks that every pair has a greatest lower and a least upper bound
    /// and tabulates both operations.
    pub fn from_poset(order: Poset) -> Result<Lattice> {
        let n = order.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = bound(&order, a, b, Side::Lower).ok_or_else(|| Error::NotALattice {
                    a: order.element_name(a).to_string(),
                    b: order.element_name(b).to_string(),
                    missing: "greatest lower bound",
                })?;
                let j = bound(&order, a, b, Side::Upper).ok_or_else(|| Error::NotALattice {
                    a: order.element_name(a).to_string(),
                    b: order.element_name(b).to_string(),
                    missing: "least upper bound",
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let bottom = (0..n).find(|&i| order.count_above(i) == n).expect("finite lattice has a bottom");
        let top = (0..n).find(|&i| order.count_below(i) == n).expect("finite lattice has a top");
        Ok(Lattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// The chain `x1 < ... < xn` as a lattice.
    pub fn chain(n: usize) -> Lattice {
        Lattice::from_poset(Poset::chain(n)).expect("chains are lattices")
    }

    /// `(𝒫({1..n}), ⊆)` with elements named by their braced subsets.
    pub fn powerset(n: usize) -> Lattice {
        assert!(n <= 10, "powerset lattice too large");
        let atoms: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let names = (0..1u64 << n)
            .map(|m| crate::ElemSet::from_bits(m).label(&atoms))
            .collect();
        let order = Poset::from_fn_unchecked(&format!("powerset{n}"), names, |a, b| a & !b == 0);
        Lattice::from_poset(order).expect("powersets are lattices")
    }

    /// `0 < a, b, c < 1` with `a, b, c` pairwise incomparable.
    pub fn diamond_m3() -> Lattice {
        let order = Poset::new(
            "M3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .expect("valid order");
        Lattice::from_poset(order).expect("M3 is a lattice")
    }

    /// `0 < a < b < 1` and `0 < c < 1`.
    pub fn pentagon_n5() -> Lattice {
        let order = Poset::new(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .expect("valid order");
        Lattice::from_poset(order).expect("N5 is a lattice")
    }

    /// Componentwise product, elements named `(x,y)`.
    pub fn product(a: &Lattice, b: &Lattice) -> Lattice {
        let (na, nb) = (a.len(), b.len());
        let names = (0..na * nb)
            .map(|k| format!("({},{})", a.element_name(k / nb), b.element_name(k % nb)))
            .collect();
        let order = Poset::from_fn_unchecked(
            &format!("{}x{}", a.name(), b.name()),
            names,
            |x, y| a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb),
        );
        Lattice::from_poset(order).expect("products of lattices are lattices")
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn into_order(self) -> Poset {
        self.order
    }

    pub fn name(&self) -> &str {
        self.order.name()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn element_name(&self, i: usize) -> &str {
        self.order.element_name(i)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.order.index_of(name)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    /// `⋀ items`, with `⋀∅` = top.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `⋁ items`, with `⋁∅` = bottom.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// The order-dual lattice.
    pub fn dual(&self) -> Lattice {
        Lattice {
            order: self.order.dual(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.order.upper_covers(self.bottom).to_vec()
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.order.lower_covers(self.top).to_vec()
    }

    /// `M(L)` by definition: `x ≠ 1` and `x` is not the meet of the elements
    /// strictly above it. In a finite lattice any `Q` with `x = ⋀Q` and
    /// `x ∉ Q` lies strictly above `x`, and shrinking a meet can only raise
    /// it, so this single meet decides every representation.
    pub fn meet_irreducibles(&self) -> MeetIrreducibles {
        let members = (0..self.len())
            .filter(|&x| {
                x != self.top && self.meet_all(self.order.above(x).filter(|&y| y != x)) != x
            })
            .collect();
        MeetIrreducibles { members }
    }

    /// Elements with exactly one upper cover. In a finite lattice this is
    /// `M(L)`; kept as an independent cross-check of [`Self::meet_irreducibles`].
    pub fn single_upper_cover_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.order.upper_covers(x).len() == 1)
            .collect()
    }

    /// Join-irreducibles (`x ≠ 0`, not the join of the elements below it).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                x != self.bottom && self.join_all(self.order.below(x).filter(|&y| y != x)) != x
            })
            .collect()
    }

    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for every triple; the witness is the
    /// first failing triple in index order.
    pub fn is_distributive(&self) -> Verdict<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Verdict::Fails((x, y, z));
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// `{x ∈ M(L) | x ≥ r}`.
    pub fn decomposition(&self, m: &MeetIrreducibles, r: usize) -> Vec<usize> {
        m.members
            .iter()
            .copied()
            .filter(|&x| self.leq(r, x))
            .collect()
    }

    /// Every `r` equals `⋀{x ∈ M(L) | x ≥ r}`; the witness is the first `r`
    /// without a decomposition.
    pub fn has_dp(&self) -> Verdict<usize> {
        let m = self.meet_irreducibles();
        for r in 0..self.len() {
            if self.meet_all(self.decomposition(&m, r)) != r {
                return Verdict::Fails(r);
            }
        }
        Verdict::Holds
    }

    /// Condition (𝔐): for `q ∈ M(L)` and `C ⊆ M(L)`, `q ≥ ⋀C` forces
    /// `q ≥ p` for some `p ∈ C`.
    ///
    /// Families that already contain an element below `q` satisfy the
    /// implication, so only subsets of `{p ∈ M(L) | q ≱ p}` are scanned, in
    /// increasing size, with meets memoized per subset. The witness `(q, C)`
    /// has the fewest members possible.
    pub fn satisfies_m(&self, caps: &Caps) -> Result<Verdict<(usize, Vec<usize>)>> {
        let m = self.meet_irreducibles();
        if m.len() > caps.meet_irreducibles {
            return Err(Error::cap("|M(L)|", caps.meet_irreducibles, m.len()));
        }
        for &q in &m.members {
            let cand: Vec<usize> = m
                .members
                .iter()
                .copied()
                .filter(|&p| !self.leq(p, q))
                .collect();
            let k = cand.len();
            let mut meets = vec![self.top as u32; 1usize << k];
            for mask in 1usize..(1 << k) {
                let low = mask.trailing_zeros() as usize;
                meets[mask] = self.meet(meets[mask & (mask - 1)] as usize, cand[low]) as u32;
            }
            for size in 1..=k {
                for mask in 1usize..(1 << k) {
                    if mask.count_ones() as usize == size && self.leq(meets[mask] as usize, q) {
                        let c = crate::ElemSet::from_bits(mask as u64)
                            .iter()
                            .map(|i| cand[i])
                            .collect();
                        return Ok(Verdict::Fails((q, c)));
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// `y` with `x ∧ y = 0` and `x ∨ y = 1`, least index first.
    pub fn complement(&self, x: usize) -> Option<usize> {
        (0..self.len()).find(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
    }

    /// Isomorphic to the powerset of its atoms: distributive, complemented,
    /// and every element is the join of the atoms below it.
    pub fn is_atomic_boolean(&self) -> bool {
        if !self.is_distributive().holds() {
            return false;
        }
        if (0..self.len()).any(|x| self.complement(x).is_none()) {
            return false;
        }
        let atoms = self.atoms();
        (0..self.len()).all(|x| self.join_all(atoms.iter().copied().filter(|&a| self.leq(a, x))) == x)
    }

    /// Maximal chains of the lattice order, bounded by `caps.lattice_size`.
    pub fn maximal_chains(&self, caps: &Caps) -> Result<Vec<Vec<usize>>> {
        caps.check_lattice(self.len())?;
        Ok(self.order.maximal_chains_unchecked())
    }

    /// Every maximal chain has `|M(L)| + 1` elements. Requires a distributive
    /// lattice with DP satisfying (𝔐).
    pub fn graded_chain_check(&self, caps: &Caps) -> Result<Verdict<Vec<usize>>> {
        if let Verdict::Fails((x, y, z)) = self.is_distributive() {
            return Err(Error::PreconditionFailed(format!(
                "not distributive at ({}, {}, {})",
                self.element_name(x),
                self.element_name(y),
                self.element_name(z)
            )));
        }
        if let Verdict::Fails(r) = self.has_dp() {
            return Err(Error::PreconditionFailed(format!(
                "`{}` has no decomposition",
                self.element_name(r)
            )));
        }
        if !self.satisfies_m(caps)?.holds() {
            return Err(Error::PreconditionFailed("condition (M) fails".into()));
        }
        let expected = self.meet_irreducibles().len() + 1;
        for chain in self.maximal_chains(caps)? {
            if chain.len() != expected {
                return Ok(Verdict::Fails(chain));
            }
        }
        Ok(Verdict::Holds)
    }

    pub fn names_of(&self, items: &[usize]) -> Vec<String> {
        items.iter().map(|&i| self.element_name(i).to_string()).collect()
    }
}

/// Order isomorphism between two lattices (lattice isomorphisms are exactly
/// the order isomorphisms).
pub fn lattice_isomorphism(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    poset_isomorphism(a.order(), b.order())
}

#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
}

// The common bound that dominates every other common bound, if any.
fn bound(order: &Poset, a: usize, b: usize, side: Side) -> Option<usize> {
    let common: Vec<usize> = match side {
        Side::Lower => order.below(a).filter(|&c| order.leq(c, b)).collect(),
        Side::Upper => order.above(a).filter(|&c| order.leq(b, c)).collect(),
    };
    let size = common.len();
    common.into_iter().find(|&c| match side {
        Side::Lower => order.count_below(c) == size,
        Side::Upper => order.count_above(c) == size,
    })
}
