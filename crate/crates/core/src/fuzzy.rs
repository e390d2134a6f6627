//! Lattice-valued fuzzy up-sets, their cuts, and the meet-closure of their
//! image.
//!
//! A fuzzy up-set is a monotone map `μ: X -> L`. The `p`-cut is
//! `μ_p = {x | μ(x) >= p}`; it is always an up-set of `X`.

use crate::bits::ElemSet;
use crate::birkhoff::UpSetFamily;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Verdict};
use crate::poset::{Poset, UpSet};

#[derive(Debug, Clone)]
pub struct FuzzyUpSet {
    domain: Poset,
    codomain: Lattice,
    values: Vec<usize>,
}

impl FuzzyUpSet {
    /// `values[x]` is the lattice index assigned to domain element `x`.
    pub fn new(domain: Poset, codomain: Lattice, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} values for a domain of {} elements",
                values.len(),
                domain.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::UnknownElement(format!("lattice index {v}")));
        }
        for x in 0..domain.len() {
            for y in domain.above(x) {
                if !codomain.leq(values[x], values[y]) {
                    return Err(Error::NotMonotoneMap {
                        x: domain.element_name(x).to_string(),
                        y: domain.element_name(y).to_string(),
                    });
                }
            }
        }
        Ok(FuzzyUpSet {
            domain,
            codomain,
            values,
        })
    }

    /// Builds `μ` from `(domain element, lattice element)` name pairs;
    /// every domain element must be assigned exactly once.
    pub fn from_names<S: AsRef<str>>(
        domain: Poset,
        codomain: Lattice,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut values = vec![None; domain.len()];
        for (x, p) in pairs {
            let xi = domain.index_of(x.as_ref())?;
            let pi = codomain.index_of(p.as_ref())?;
            if values[xi].replace(pi).is_some() {
                return Err(Error::DuplicateName(x.as_ref().to_string()));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::PreconditionFailed(format!(
                        "no value for `{}`",
                        domain.element_name(i)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FuzzyUpSet::new(domain, codomain, values)
    }

    /// The inclusion `(M(L), <=) -> L`.
    pub fn meet_irreducible_inclusion(l: &Lattice) -> Self {
        let m = l.meet_irreducibles().members;
        let domain = l.order().induced(&format!("M_{}", l.name()), &m);
        FuzzyUpSet {
            domain,
            codomain: l.clone(),
            values: m,
        }
    }

    pub fn domain(&self) -> &Poset {
        &self.domain
    }

    pub fn codomain(&self) -> &Lattice {
        &self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `μ_p` for a lattice index `p`.
    pub fn cut(&self, p: usize) -> UpSet {
        let members = (0..self.domain.len())
            .filter(|&x| self.codomain.leq(p, self.values[x]))
            .collect();
        self.domain
            .upset(members)
            .expect("cuts of a monotone map are up-sets")
    }

    pub fn cut_named(&self, p: &str) -> Result<UpSet> {
        Ok(self.cut(self.codomain.index_of(p)?))
    }

    /// Every cut, indexed by lattice element, plus the distinct ones `μ_L`.
    pub fn cut_family(&self) -> CutFamily {
        let cuts: Vec<ElemSet> = (0..self.codomain.len())
            .map(|p| self.cut(p).members())
            .collect();
        let distinct = UpSetFamily::new(self.domain.clone(), cuts.iter().copied())
            .expect("cuts are up-sets");
        CutFamily { cuts, distinct }
    }

    /// `L^μ`: meets of all subsets of `μ(X)`, including the empty meet.
    pub fn l_mu(&self) -> MeetClosure {
        let l = &self.codomain;
        let mut inside = vec![false; l.len()];
        let mut members = vec![l.top()];
        inside[l.top()] = true;
        for &v in &self.values {
            if !inside[v] {
                inside[v] = true;
                members.push(v);
            }
        }
        let mut i = 0;
        while i < members.len() {
            for j in 0..i {
                let m = l.meet(members[i], members[j]);
                if !inside[m] {
                    inside[m] = true;
                    members.push(m);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let order = l
            .order()
            .induced(&format!("{}_mu", l.name()), &members);
        let lattice = Lattice::from_poset(order).expect("a meet-closed subset with top is a lattice");
        MeetClosure { members, lattice }
    }
}

/// `μ_p` for every `p` and the family of distinct cuts.
#[derive(Debug, Clone)]
pub struct CutFamily {
    /// `cuts[p]` for every lattice index `p`.
    pub cuts: Vec<ElemSet>,
    pub distinct: UpSetFamily,
}

/// `L^μ` as a lattice; element `k` is codomain element `members[k]`.
#[derive(Debug, Clone)]
pub struct MeetClosure {
    pub members: Vec<usize>,
    pub lattice: Lattice,
}

impl MeetClosure {
    pub fn position(&self, p: usize) -> Option<usize> {
        self.members.binary_search(&p).ok()
    }
}

/// The fuzzy up-set `μ(x) = ⋂{p ∈ F | x ∈ p}` into `(F, ⊇)`, together with
/// the lattice it maps into.
///
/// Requires `F` to contain the carrier and be closed under intersection;
/// the result is checked to satisfy `μ_p = p` for every `p ∈ F`.
pub fn canonical_fuzzy(family: &UpSetFamily, caps: &Caps) -> Result<FuzzyUpSet> {
    let full = family.full_set();
    if !family.contains(full) {
        return Err(Error::MissingFullSet);
    }
    if let Some((a, b)) = family.intersection_gap() {
        return Err(Error::NotIntersectionClosed {
            a: family.label(a),
            b: family.label(b),
        });
    }
    let codomain = family.to_lattice(&format!("F_{}", family.carrier().name()), caps)?;
    let sets = family.sets();
    let values: Vec<usize> = (0..family.carrier().len())
        .map(|x| {
            let meet = sets
                .iter()
                .filter(|s| s.contains(x))
                .fold(full, |acc, &s| acc.intersection(s));
            family.position(meet).expect("family is intersection-closed")
        })
        .collect();
    let mu = FuzzyUpSet::new(family.carrier().clone(), codomain, values)?;
    for (p, &set) in sets.iter().enumerate() {
        let cut = mu.cut(p).members();
        if cut != set {
            return Err(Error::CutMismatch(format!(
                "cut at {} is {}",
                family.label(set),
                family.label(cut)
            )));
        }
    }
    Ok(mu)
}

/// Failure of "the cuts are all the up-sets".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    /// An up-set of the domain that is not a cut.
    pub missing_upset: ElemSet,
    /// `x` and an antichain `{x_i}` with `μ(x) >= ⋀μ(x_i)` but `x` above none of them.
    pub element: usize,
    pub family: ElemSet,
}

/// Decides whether the cuts of `μ` are exactly the up-sets of its domain.
///
/// One leg compares the cut family with the enumerated up-sets. The other
/// checks, for every `x` and every antichain `{x_i}` (the empty one
/// included, with `⋀∅` the top), that `μ(x) >= ⋀μ(x_i)` forces
/// `x >= x_i` for some `i`. A violating family can be shrunk to its
/// minimal elements and contains nothing below `x`, so only antichains of
/// `{y | x ≱ y}` are scanned. The legs must agree.
pub fn cuts_are_all_upsets(mu: &FuzzyUpSet, caps: &Caps) -> Result<Verdict<CutWitness>> {
    let x = mu.domain();
    let l = mu.codomain();
    let upsets = x.all_upsets(caps)?;
    let cuts = mu.cut_family();
    let missing = upsets
        .iter()
        .map(|u| u.members())
        .find(|&u| !cuts.distinct.contains(u));

    let violation = (0..x.len()).find_map(|e| {
        let candidates: ElemSet = (0..x.len()).filter(|&y| !x.leq(y, e)).collect();
        let dominated = |fam: ElemSet| {
            l.leq(l.meet_all(fam.iter().map(|i| mu.value(i))), mu.value(e))
        };
        let mut found = None;
        x.for_each_antichain_within(candidates, |fam| {
            if !fam.is_empty() && dominated(fam) {
                found = Some(fam);
                return false;
            }
            true
        });
        found
            .or_else(|| dominated(ElemSet::EMPTY).then_some(ElemSet::EMPTY))
            .map(|fam| (e, fam))
    });

    match (missing, violation) {
        (None, None) => Ok(Verdict::Holds),
        (Some(missing_upset), Some((element, family))) => Ok(Verdict::Fails(CutWitness {
            missing_upset,
            element,
            family,
        })),
        (missing, violation) => Err(Error::InternalDisagreement(format!(
            "cut family leg says {}, element-wise leg says {}",
            missing.is_none(),
            violation.is_none()
        ))),
    }
}

/// Checks `μ(x) ∈ M(L^μ)` for all `x`; meaningful when the cuts are all
/// the up-sets. Fails with the first offending `x`.
pub fn image_in_m(mu: &FuzzyUpSet, caps: &Caps) -> Result<Verdict<usize>> {
    if !cuts_are_all_upsets(mu, caps)?.holds() {
        return Err(Error::PreconditionFailed(
            "the cuts of the map are not all the up-sets of its domain".into(),
        ));
    }
    let closure = mu.l_mu();
    let m = closure.lattice.meet_irreducibles();
    let bad = (0..mu.domain().len()).find(|&x| {
        let k = closure.position(mu.value(x)).expect("image lies in L^mu");
        !m.contains(k)
    });
    Ok(match bad {
        Some(x) => Verdict::Fails(x),
        None => Verdict::Holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birkhoff::upset_lattice;

    fn wedge() -> Poset {
        Poset::new("X", &["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap()
    }

    fn wedge_canonical() -> FuzzyUpSet {
        let caps = Caps::default();
        let family = UpSetFamily::all(wedge(), &caps).unwrap();
        canonical_fuzzy(&family, &caps).unwrap()
    }

    fn value_label(mu: &FuzzyUpSet, x: usize) -> &str {
        mu.codomain().element_name(mu.value(x))
    }

    #[test]
    fn canonical_fuzzy_on_wedge() {
        let mu = wedge_canonical();
        assert_eq!(value_label(&mu, 0), "{a,b}");
        assert_eq!(value_label(&mu, 1), "{b}");
        assert_eq!(value_label(&mu, 2), "{b,c}");
        let cut = mu.cut_named("{a,b}").unwrap();
        assert_eq!(cut.label(mu.domain()), "{a,b}");
        // bottom of (F, ⊇) is X; its cut is everything
        assert_eq!(mu.cut(mu.codomain().bottom()).members(), ElemSet::full(3));
    }

    #[test]
    fn canonical_fuzzy_small_families() {
        let caps = Caps::default();
        let x = wedge();
        let full = x.full_set();
        let only_full = UpSetFamily::new(x.clone(), [full]).unwrap();
        let mu = canonical_fuzzy(&only_full, &caps).unwrap();
        assert!(mu.values().iter().all(|&v| v == 0));
        assert_eq!(mu.cut_family().distinct.sets(), &[full]);

        // {∅, X}: μ is constant X, and the ∅-cut is ∅ because X ⊄ ∅
        let two = UpSetFamily::new(x.clone(), [ElemSet::EMPTY, full]).unwrap();
        let mu = canonical_fuzzy(&two, &caps).unwrap();
        assert!(mu.values().iter().all(|&v| mu.codomain().element_name(v) == "{a,b,c}"));
        assert_eq!(mu.cut_family().distinct.sets(), &[ElemSet::EMPTY, full]);

        let no_full = UpSetFamily::new(x.clone(), [ElemSet::EMPTY]).unwrap();
        assert_eq!(canonical_fuzzy(&no_full, &caps).unwrap_err(), Error::MissingFullSet);

        let gap = UpSetFamily::new(x, [ElemSet::from_bits(0b011), ElemSet::from_bits(0b110), full])
            .unwrap();
        assert!(matches!(
            canonical_fuzzy(&gap, &caps),
            Err(Error::NotIntersectionClosed { .. })
        ));
    }

    #[test]
    fn l_mu_cases() {
        let mu = wedge_canonical();
        let closure = mu.l_mu();
        assert_eq!(closure.members.len(), 5);

        let two = Lattice::chain(2);
        let constant = FuzzyUpSet::new(wedge(), two.clone(), vec![1, 1, 1]).unwrap();
        assert_eq!(constant.l_mu().members, vec![1]);
        assert!(constant.l_mu().lattice.is_trivial());

        let l = Lattice::powerset(3);
        let inc = FuzzyUpSet::meet_irreducible_inclusion(&l);
        assert_eq!(inc.l_mu().members.len(), 8);
    }

    #[test]
    fn cut_examples() {
        let l = Lattice::pentagon_n5();
        let inc = FuzzyUpSet::meet_irreducible_inclusion(&l);
        assert_eq!(inc.cut(l.bottom()).members(), inc.domain().full_set());
        assert!(inc.cut(l.top()).is_empty());
        assert!(FuzzyUpSet::new(wedge(), Lattice::chain(2), vec![1, 0, 1]).is_err());
    }

    #[test]
    fn cuts_criterion_examples() {
        let caps = Caps::default();
        let fx = upset_lattice(&wedge(), &caps).unwrap().lattice;
        let inc = FuzzyUpSet::meet_irreducible_inclusion(&fx);
        assert!(cuts_are_all_upsets(&inc, &caps).unwrap().holds());
        assert!(image_in_m(&inc, &caps).unwrap().holds());

        // 2-antichain {a, c} into the 2-chain, both at the top
        let x = Poset::new::<_, &str>("A", &["a", "c"], &[]).unwrap();
        let mu = FuzzyUpSet::new(x, Lattice::chain(2), vec![1, 1]).unwrap();
        let Verdict::Fails(w) = cuts_are_all_upsets(&mu, &caps).unwrap() else {
            panic!("expected failure");
        };
        assert_eq!((w.element, w.family), (0, ElemSet::singleton(1)));
        assert!(matches!(image_in_m(&mu, &caps), Err(Error::PreconditionFailed(_))));

        let single = Poset::chain(1);
        let mu = FuzzyUpSet::new(single.clone(), Lattice::chain(2), vec![0]).unwrap();
        assert!(cuts_are_all_upsets(&mu, &caps).unwrap().holds());
        assert!(image_in_m(&mu, &caps).unwrap().holds());
        // the top value leaves ∅ out of the cuts, caught by the empty family
        let mu = FuzzyUpSet::new(single, Lattice::chain(2), vec![1]).unwrap();
        let Verdict::Fails(w) = cuts_are_all_upsets(&mu, &caps).unwrap() else {
            panic!("expected failure");
        };
        assert_eq!(w.family, ElemSet::EMPTY);
        assert_eq!(w.missing_upset, ElemSet::EMPTY);
    }
}
