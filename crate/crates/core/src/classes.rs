//! Classes of monotonic operators with the same embedded family, and the
//! lattice they form.
//!
//! Two operators on `M(L)` are equivalent when their families `𝒮_G`
//! coincide; classes are ordered by inclusion of families. Every family
//! containing `∅` and `M(L)` and closed under union and intersection is
//! some `𝒮_G`, so the classes are enumerated through those families and
//! each is represented by its canonical operator.

use std::collections::HashMap;

use crate::bits::ElemSet;
use crate::birkhoff::{meet_irreducible_poset, UpSetFamily};
use crate::closure::{close_sets, sublattices, Bounds};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::Poset;
use crate::quotient::{canonical_operator, operator_family, MonotonicOperator};

/// `G1 ≈ G2`: equal embedded families.
pub fn are_equivalent(g1: &MonotonicOperator, g2: &MonotonicOperator, caps: &Caps) -> Result<bool> {
    if !g1.carrier().same_order(g2.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    Ok(operator_family(g1, caps)? == operator_family(g2, caps)?)
}

#[derive(Debug, Clone)]
pub struct OperatorClass {
    pub family: UpSetFamily,
    pub representative: MonotonicOperator,
}

/// The ordered set of operator classes, validated as a lattice.
#[derive(Debug, Clone)]
pub struct ClassLattice {
    pub carrier: Poset,
    /// Sorted by family size, then lexicographically by family.
    pub classes: Vec<OperatorClass>,
    /// Class `k` is the element named `C{k}`.
    pub lattice: Lattice,
    index: HashMap<Vec<ElemSet>, usize>,
}

impl ClassLattice {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The class whose family is exactly `sets` (in any order).
    pub fn class_of_family(&self, sets: &[ElemSet]) -> Option<usize> {
        let mut key = sets.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }

    /// The class of an operator on the same carrier.
    pub fn class_of(&self, g: &MonotonicOperator, caps: &Caps) -> Result<Option<usize>> {
        if !g.carrier().same_order(&self.carrier) {
            return Err(Error::CarrierMismatch);
        }
        Ok(self.index.get(&operator_family(g, caps)?).copied())
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn family_labels(&self, k: usize) -> Vec<String> {
        self.classes[k].family.labels()
    }
}

/// Classes of monotonic operators on `M(L)` for a finite distributive `L`.
///
/// With `force`, non-distributive `L` is accepted as an experiment and the
/// same construction is run on its `M(L)`.
pub fn class_lattice(l: &Lattice, caps: &Caps, force: bool) -> Result<ClassLattice> {
    if !force {
        if let Some(&(x, y, z)) = l.is_distributive().witness() {
            return Err(Error::PreconditionFailed(format!(
                "`{}` is not distributive (witness {}, {}, {})",
                l.name(),
                l.element_name(x),
                l.element_name(y),
                l.element_name(z)
            )));
        }
    }
    class_lattice_on(&meet_irreducible_poset(l), caps)
}

/// Classes of monotonic operators on the poset `carrier`.
pub fn class_lattice_on(carrier: &Poset, caps: &Caps) -> Result<ClassLattice> {
    let host = UpSetFamily::all(carrier.clone(), caps)?;
    let families = sublattices(&host, Bounds::Required, caps)?;
    caps.check_lattice(families.len())?;
    let mut classes = Vec::with_capacity(families.len());
    let mut index = HashMap::with_capacity(families.len());
    for (k, sets) in families.into_iter().enumerate() {
        index.insert(sets.clone(), k);
        let family = UpSetFamily::new(carrier.clone(), sets)?;
        let representative = canonical_operator(&format!("C{k}"), &family, caps)?;
        classes.push(OperatorClass {
            family,
            representative,
        });
    }

    let names: Vec<String> = (0..classes.len()).map(|k| format!("C{k}")).collect();
    let order = Poset::from_fn(&format!("H_{}", carrier.name()), names, |a, b| {
        classes[a]
            .family
            .sets()
            .iter()
            .all(|&s| classes[b].family.contains(s))
    })
    .map_err(|e| Error::VerificationFailed(format!("class order: {e}")))?;
    let lattice = Lattice::from_poset(order)
        .map_err(|e| Error::VerificationFailed(format!("class order is not a lattice: {e}")))?;

    let result = ClassLattice {
        carrier: carrier.clone(),
        classes,
        lattice,
        index,
    };
    check_operations(&result)?;
    Ok(result)
}

// Meet must be the intersection of families and join the closure of their
// union, both as computed from the order.
fn check_operations(h: &ClassLattice) -> Result<()> {
    let n = h.len();
    for a in 0..n {
        for b in a..n {
            let fa = &h.classes[a].family;
            let fb = &h.classes[b].family;
            let common: Vec<ElemSet> = fa.sets().iter().copied().filter(|&s| fb.contains(s)).collect();
            let joined = close_sets(fa.sets().iter().chain(fb.sets()).copied());
            let meet = h.class_of_family(&common);
            let join = h.class_of_family(&joined);
            if meet != Some(h.meet(a, b)) || join != Some(h.join(a, b)) {
                return Err(Error::InternalDisagreement(format!(
                    "classes C{a} and C{b}: order gives meet C{} and join C{}, families give {:?} and {:?}",
                    h.meet(a, b),
                    h.join(a, b),
                    meet,
                    join
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wedge() -> Poset {
        Poset::new("X", &["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap()
    }

    fn op(assign: &[(&str, Vec<&str>)]) -> MonotonicOperator {
        MonotonicOperator::from_names("G", wedge(), assign).unwrap()
    }

    fn set(names: &[&str]) -> ElemSet {
        let x = wedge();
        names.iter().map(|n| x.index_of(n).unwrap()).collect()
    }

    #[test]
    fn equivalent_operators_are_equivalent() {
        let caps = Caps::default();
        let g = op(&[("a", vec!["a", "c"]), ("c", vec!["c"]), ("b", vec![])]);
        let g1 = op(&[("a", vec!["a", "b", "c"]), ("c", vec!["b", "c"]), ("b", vec!["b"])]);
        assert_ne!(g, g1);
        assert!(are_equivalent(&g, &g1, &caps).unwrap());
        assert!(are_equivalent(&g, &g, &caps).unwrap());
        let k = MonotonicOperator::constant("K", wedge(), ElemSet::EMPTY).unwrap();
        assert!(!are_equivalent(&g, &k, &caps).unwrap());
        let other = MonotonicOperator::constant("K", Poset::chain(3), ElemSet::EMPTY).unwrap();
        assert_eq!(are_equivalent(&g, &other, &caps), Err(Error::CarrierMismatch));
    }

    #[test]
    fn wedge_class_lattice() {
        let caps = Caps::default();
        let h = class_lattice_on(&wedge(), &caps).unwrap();
        assert_eq!(h.len(), 7);
        let full = set(&["a", "b", "c"]);
        let bottom = h.class_of_family(&[ElemSet::EMPTY, full]).unwrap();
        let top = h.class_of_family(&[ElemSet::EMPTY, set(&["b"]), set(&["a", "b"]), set(&["b", "c"]), full]).unwrap();
        assert_eq!(h.lattice.bottom(), bottom);
        assert_eq!(h.lattice.top(), top);
        let ab = h.class_of_family(&[ElemSet::EMPTY, set(&["a", "b"]), full]).unwrap();
        let bc = h.class_of_family(&[ElemSet::EMPTY, set(&["b", "c"]), full]).unwrap();
        assert_eq!(h.meet(ab, bc), bottom);
        assert_eq!(h.join(ab, bc), top);
    }

    #[test]
    fn representatives_are_canonical() {
        let caps = Caps::default();
        let h = class_lattice_on(&wedge(), &caps).unwrap();
        for (k, c) in h.classes.iter().enumerate() {
            assert_eq!(h.class_of(&c.representative, &caps).unwrap(), Some(k));
        }
        // the full family's representative is x -> principal up-set of x
        let top = &h.classes[h.lattice.top()].representative;
        let x = wedge();
        for e in 0..3 {
            assert_eq!(top.value(e), x.up_mask(e));
        }
    }

    #[test]
    fn non_distributive_is_refused_unless_forced() {
        let caps = Caps::default();
        assert!(matches!(
            class_lattice(&Lattice::diamond_m3(), &caps, false),
            Err(Error::PreconditionFailed(_))
        ));
        let h = class_lattice(&Lattice::diamond_m3(), &caps, true).unwrap();
        // M(M3) is a 3-antichain: the bounded sublattices of the cube
        assert_eq!(h.len(), 29);
    }
}
