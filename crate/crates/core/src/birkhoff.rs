//! Up-set lattices `F_X` and the representation `L ≅ F_{M(L)}`.
//!
//! Families of up-sets are ordered by reverse inclusion throughout, so the
//! bottom of `F_X` is `X`, the top is `∅`, meets are unions and joins are
//! intersections.

use crate::bits::ElemSet;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::iso::poset_isomorphism;
use crate::lattice::{lattice_isomorphism, Lattice, MeetIrreducibles, Verdict};
use crate::poset::{Poset, UpSet};

/// A set of up-sets of one carrier poset, kept sorted by bitset value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpSetFamily {
    carrier: Poset,
    sets: Vec<ElemSet>,
}

impl UpSetFamily {
    /// Validates that every member is an up-set of `carrier`; duplicates are dropped.
    pub fn new(carrier: Poset, sets: impl IntoIterator<Item = ElemSet>) -> Result<Self> {
        if carrier.len() > ElemSet::CAPACITY {
            return Err(Error::cap("poset size", ElemSet::CAPACITY, carrier.len()));
        }
        let mut sets: Vec<ElemSet> = sets.into_iter().collect();
        for &s in &sets {
            if !carrier.is_upset(s) {
                return Err(Error::NotAnUpSet(s.label(carrier.names())));
            }
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(UpSetFamily { carrier, sets })
    }

    pub(crate) fn from_sorted_unchecked(carrier: Poset, sets: Vec<ElemSet>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        UpSetFamily { carrier, sets }
    }

    /// `𝓕_X`: every up-set of `carrier`.
    pub fn all(carrier: Poset, caps: &Caps) -> Result<Self> {
        let sets = carrier
            .all_upsets(caps)?
            .into_iter()
            .map(UpSet::members)
            .collect();
        Ok(UpSetFamily { carrier, sets })
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: ElemSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn position(&self, s: ElemSet) -> Option<usize> {
        self.sets.binary_search(&s).ok()
    }

    pub fn full_set(&self) -> ElemSet {
        self.carrier.full_set()
    }

    pub fn label(&self, s: ElemSet) -> String {
        s.label(self.carrier.names())
    }

    pub fn labels(&self) -> Vec<String> {
        self.sets.iter().map(|&s| self.label(s)).collect()
    }

    /// First pair whose intersection is missing.
    pub fn intersection_gap(&self) -> Option<(ElemSet, ElemSet)> {
        self.closure_gap(ElemSet::intersection)
    }

    /// First pair whose union is missing.
    pub fn union_gap(&self) -> Option<(ElemSet, ElemSet)> {
        self.closure_gap(ElemSet::union)
    }

    fn closure_gap(&self, op: fn(ElemSet, ElemSet) -> ElemSet) -> Option<(ElemSet, ElemSet)> {
        for (i, &a) in self.sets.iter().enumerate() {
            for &b in &self.sets[i + 1..] {
                if !self.contains(op(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Contains `∅` and the carrier and is closed under union and
    /// intersection (for finite families, arbitrary closure follows).
    pub fn is_complete_sublattice(&self) -> bool {
        self.contains(ElemSet::EMPTY)
            && self.contains(self.full_set())
            && self.union_gap().is_none()
            && self.intersection_gap().is_none()
    }

    /// `(family, ⊇)` as a lattice whose elements are named by braced labels.
    pub fn to_lattice(&self, name: &str, caps: &Caps) -> Result<Lattice> {
        caps.check_lattice(self.len())?;
        let sets = &self.sets;
        let order = Poset::from_fn_unchecked(name, self.labels(), |a, b| {
            sets[a].is_superset(sets[b])
        });
        Lattice::from_poset(order)
    }
}

/// `F_X` together with the family it was built from. Element `i` of the
/// lattice is `family.sets()[i]`.
#[derive(Debug, Clone)]
pub struct UpSetLattice {
    pub family: UpSetFamily,
    pub lattice: Lattice,
}

/// `F_X = (𝓕_X, ⊇)`.
pub fn upset_lattice(x: &Poset, caps: &Caps) -> Result<UpSetLattice> {
    let family = UpSetFamily::all(x.clone(), caps)?;
    let lattice = family.to_lattice(&format!("F_{}", x.name()), caps)?;
    debug_assert!(lattice.is_distributive().holds());
    Ok(UpSetLattice { family, lattice })
}

/// The map `f(p) = {x ∈ M(L) | x ≥ p}` into up-sets of `(M(L), ≤)`.
#[derive(Debug, Clone)]
pub struct BirkhoffMap {
    /// `M(L)` as lattice indices, ascending.
    pub meet_irreducibles: Vec<usize>,
    /// `(M(L), ≤)`; element `k` is lattice element `meet_irreducibles[k]`.
    pub m_poset: Poset,
    /// `image[p] = f(p)` for every lattice element `p`.
    pub image: Vec<ElemSet>,
    /// The distinct values of `f`.
    pub family: UpSetFamily,
}

impl BirkhoffMap {
    pub fn is_injective(&self) -> bool {
        self.family.len() == self.image.len()
    }

    /// Lattice index of `M(L)` element `k`.
    pub fn lattice_element(&self, k: usize) -> usize {
        self.meet_irreducibles[k]
    }
}

pub fn birkhoff_map(l: &Lattice) -> Result<BirkhoffMap> {
    let m = l.meet_irreducibles();
    if m.len() > ElemSet::CAPACITY {
        return Err(Error::cap("|M(L)|", ElemSet::CAPACITY, m.len()));
    }
    let m_poset = l
        .order()
        .induced(&format!("M_{}", l.name()), &m.members);
    let image: Vec<ElemSet> = (0..l.len())
        .map(|p| {
            m.members
                .iter()
                .enumerate()
                .filter(|&(_, &x)| l.leq(p, x))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let family = UpSetFamily::new(m_poset.clone(), image.iter().copied())?;
    Ok(BirkhoffMap {
        meet_irreducibles: m.members,
        m_poset,
        image,
        family,
    })
}

/// Why a lattice is not isomorphic to the up-sets of its meet-irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonRepresentable {
    NotDistributive { x: usize, y: usize, z: usize },
    NoDecomposition { element: usize },
    ConditionM { q: usize, family: Vec<usize> },
}

/// The three predicates of the algebraic criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicLeg {
    pub distributive: Verdict<(usize, usize, usize)>,
    pub decomposition: Verdict<usize>,
    pub condition_m: Verdict<(usize, Vec<usize>)>,
}

impl AlgebraicLeg {
    pub fn compute(l: &Lattice, caps: &Caps) -> Result<Self> {
        Ok(AlgebraicLeg {
            distributive: l.is_distributive(),
            decomposition: l.has_dp(),
            condition_m: l.satisfies_m(caps)?,
        })
    }

    pub fn holds(&self) -> bool {
        self.distributive.holds() && self.decomposition.holds() && self.condition_m.holds()
    }

    fn reason(&self) -> Option<NonRepresentable> {
        if let Verdict::Fails((x, y, z)) = self.distributive {
            return Some(NonRepresentable::NotDistributive { x, y, z });
        }
        if let Verdict::Fails(element) = self.decomposition {
            return Some(NonRepresentable::NoDecomposition { element });
        }
        if let Verdict::Fails((q, family)) = &self.condition_m {
            return Some(NonRepresentable::ConditionM {
                q: *q,
                family: family.clone(),
            });
        }
        None
    }
}

#[derive(Debug, Clone)]
pub enum RepresentationVerdict {
    /// `L ≅ F_X` with `X = (M(L), ≤)`; `f[p]` is the up-set assigned to `p`.
    RepresentableBy { carrier: Poset, f: Vec<ElemSet> },
    NotRepresentable(NonRepresentable),
}

/// Both legs of the representation decision and their common verdict.
#[derive(Debug, Clone)]
pub struct Representation {
    pub algebraic: AlgebraicLeg,
    /// Isomorphism `L -> F_{M(L)}` found by search (indices into `upsets`).
    pub structural: Option<Vec<usize>>,
    pub map: BirkhoffMap,
    pub verdict: RepresentationVerdict,
}

impl Representation {
    pub fn is_representable(&self) -> bool {
        matches!(self.verdict, RepresentationVerdict::RepresentableBy { .. })
    }
}

/// Decides whether `L ≅ F_X` for some poset `X`.
///
/// The algebraic leg evaluates distributivity, DP and (𝔐). The structural
/// leg builds `F_{M(L)}` and searches for a lattice isomorphism. The two are
/// required to agree; when they do and `L` is representable, the returned
/// isomorphism is `f(p) = {x ∈ M(L) | x ≥ p}`, checked to be a bijection
/// that preserves and reflects order with `⋀f(r) = r`.
pub fn represents(l: &Lattice, caps: &Caps) -> Result<Representation> {
    let algebraic = AlgebraicLeg::compute(l, caps)?;
    let map = birkhoff_map(l)?;
    let upsets_count = map.m_poset.count_upsets(caps)?;
    let structural = if upsets_count == l.len() {
        let f_m = UpSetFamily::all(map.m_poset.clone(), caps)?.to_lattice("F_M", caps)?;
        lattice_isomorphism(l, &f_m)
    } else {
        None
    };

    if algebraic.holds() != structural.is_some() {
        return Err(Error::InternalDisagreement(format!(
            "lattice `{}`: distributive/DP/(M) leg says {}, isomorphism search says {}",
            l.name(),
            algebraic.holds(),
            structural.is_some()
        )));
    }

    let verdict = match algebraic.reason() {
        Some(reason) => RepresentationVerdict::NotRepresentable(reason),
        None => {
            check_birkhoff_isomorphism(l, &map)?;
            RepresentationVerdict::RepresentableBy {
                carrier: map.m_poset.clone(),
                f: map.image.clone(),
            }
        }
    };
    Ok(Representation {
        algebraic,
        structural,
        map,
        verdict,
    })
}

fn check_birkhoff_isomorphism(l: &Lattice, map: &BirkhoffMap) -> Result<()> {
    let fail = |msg: String| Err(Error::InternalDisagreement(format!("lattice `{}`: {msg}", l.name())));
    if !map.is_injective() {
        return fail("f is not injective".into());
    }
    for p in 0..l.len() {
        for q in 0..l.len() {
            if l.leq(p, q) != map.image[p].is_superset(map.image[q]) {
                return fail(format!(
                    "f does not preserve/reflect order at ({}, {})",
                    l.element_name(p),
                    l.element_name(q)
                ));
            }
        }
        let back = l.meet_all(map.image[p].iter().map(|k| map.meet_irreducibles[k]));
        if back != p {
            return fail(format!("⋀f({0}) != {0}", l.element_name(p)));
        }
    }
    Ok(())
}

/// Decides `L1 ≅ L2` by comparing `(M(L1), ≤)` and `(M(L2), ≤)`; both
/// lattices must be distributive with DP and (𝔐). Cross-checked against a
/// direct lattice isomorphism search.
pub fn m_poset_iso_criterion(l1: &Lattice, l2: &Lattice, caps: &Caps) -> Result<bool> {
    for l in [l1, l2] {
        if !AlgebraicLeg::compute(l, caps)?.holds() {
            return Err(Error::PreconditionFailed(format!(
                "`{}` is not distributive with DP and (M)",
                l.name()
            )));
        }
    }
    let m1 = meet_irreducible_poset(l1);
    let m2 = meet_irreducible_poset(l2);
    let by_m = poset_isomorphism(&m1, &m2).is_some();
    let direct = lattice_isomorphism(l1, l2).is_some();
    if by_m != direct {
        return Err(Error::InternalDisagreement(format!(
            "`{}` vs `{}`: M-poset test says {by_m}, direct search says {direct}",
            l1.name(),
            l2.name()
        )));
    }
    Ok(by_m)
}

/// `(M(L), ≤)` as an induced sub-poset.
pub fn meet_irreducible_poset(l: &Lattice) -> Poset {
    let MeetIrreducibles { members } = l.meet_irreducibles();
    l.order().induced(&format!("M_{}", l.name()), &members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wedge() -> Poset {
        Poset::new("X", &["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap()
    }

    fn stem_square() -> Lattice {
        let p = Poset::new(
            "L",
            &["0", "d", "a", "c", "1"],
            &[("0", "d"), ("d", "a"), ("d", "c"), ("a", "1"), ("c", "1")],
        )
        .unwrap();
        Lattice::from_poset(p).unwrap()
    }

    #[test]
    fn wedge_upset_lattice() {
        let caps = Caps::default();
        let fx = upset_lattice(&wedge(), &caps).unwrap();
        assert_eq!(fx.family.labels(), vec!["{}", "{b}", "{a,b}", "{b,c}", "{a,b,c}"]);
        assert_eq!(fx.lattice.len(), 5);
        assert!(fx.lattice.is_distributive().holds());
        assert_eq!(fx.lattice.element_name(fx.lattice.bottom()), "{a,b,c}");
        assert_eq!(fx.lattice.element_name(fx.lattice.top()), "{}");
        // meet = union, join = intersection
        let sets = fx.family.sets();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(sets[fx.lattice.meet(a, b)], sets[a].union(sets[b]));
                assert_eq!(sets[fx.lattice.join(a, b)], sets[a].intersection(sets[b]));
            }
        }
    }

    #[test]
    fn chains_and_antichains() {
        let caps = Caps::default();
        let fa = upset_lattice(&Poset::antichain(3), &caps).unwrap();
        assert!(lattice_isomorphism(&fa.lattice, &Lattice::powerset(3)).is_some());
        let fc = upset_lattice(&Poset::chain(3), &caps).unwrap();
        assert!(lattice_isomorphism(&fc.lattice, &Lattice::chain(4)).is_some());
    }

    #[test]
    fn birkhoff_map_of_stem_square() {
        let l = stem_square();
        let map = birkhoff_map(&l).unwrap();
        let names: Vec<&str> = map.m_poset.names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["0", "a", "c"]);
        let f: Vec<String> = map.image.iter().map(|s| s.label(map.m_poset.names())).collect();
        // elements in order 0, d, a, c, 1
        assert_eq!(f, vec!["{0,a,c}", "{a,c}", "{a}", "{c}", "{}"]);
        assert!(map.is_injective());
    }

    #[test]
    fn birkhoff_map_small_cases() {
        let two = Lattice::chain(2);
        let map = birkhoff_map(&two).unwrap();
        assert_eq!(map.image, vec![ElemSet::singleton(0), ElemSet::EMPTY]);
        let p2 = Lattice::powerset(2);
        let map = birkhoff_map(&p2).unwrap();
        // coatoms {1} and {2}
        assert_eq!(map.m_poset.names(), &["{1}".to_string(), "{2}".to_string()]);
        assert!(map.is_injective());
        assert_eq!(map.family.len(), 4);
        assert!(map.m_poset.is_antichain(map.m_poset.full_set()));
    }

    #[test]
    fn representation_verdicts() {
        let caps = Caps::default();
        let m3 = represents(&Lattice::diamond_m3(), &caps).unwrap();
        assert!(!m3.is_representable());
        assert!(m3.structural.is_none());
        assert!(matches!(
            m3.verdict,
            RepresentationVerdict::NotRepresentable(NonRepresentable::NotDistributive { .. })
        ));

        let l = represents(&stem_square(), &caps).unwrap();
        assert!(l.is_representable());
        assert!(l.structural.is_some());

        let p3 = represents(&Lattice::powerset(3), &caps).unwrap();
        match &p3.verdict {
            RepresentationVerdict::RepresentableBy { carrier, .. } => {
                assert!(poset_isomorphism(carrier, &Poset::antichain(3)).is_some());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(!represents(&Lattice::pentagon_n5(), &caps).unwrap().is_representable());
    }

    #[test]
    fn m_poset_criterion() {
        let caps = Caps::default();
        let grid = Lattice::product(&Lattice::chain(2), &Lattice::chain(2));
        assert!(m_poset_iso_criterion(&Lattice::powerset(2), &grid, &caps).unwrap());
        assert!(!m_poset_iso_criterion(&Lattice::chain(3), &Lattice::powerset(2), &caps).unwrap());
        assert!(matches!(
            m_poset_iso_criterion(&Lattice::diamond_m3(), &grid, &caps),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn family_closure_gaps() {
        let x = wedge();
        let full = x.full_set();
        let ab = ElemSet::from_bits(0b011);
        let bc = ElemSet::from_bits(0b110);
        let fam = UpSetFamily::new(x.clone(), [ElemSet::EMPTY, ab, bc, full]).unwrap();
        assert_eq!(fam.intersection_gap(), Some((ab, bc)));
        assert!(!fam.is_complete_sublattice());
        assert!(UpSetFamily::new(x, [ElemSet::from_bits(0b001)]).is_err());
    }
}
