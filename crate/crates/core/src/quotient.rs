//! Monotonic operators, their quotients, and embeddings of up-set lattices.
//!
//! A monotonic operator `G` sends each element of `X` to a subset of `X`
//! with `x <= y ⇒ G(x) ⊇ G(y)`. Its quotient `X/G` groups elements with
//! equal values, ordered by `[x] <= [y] ⇔ G(x) ⊇ G(y)`. Each up-set `T` of
//! `X/G` unfolds to `S_T`, the union of its classes, and `𝒮_G = {S_T}` is a
//! copy of `F_{X/G}` inside `F_X` that keeps `∅`, `X`, unions and
//! intersections.

use crate::bits::ElemSet;
use crate::birkhoff::{birkhoff_map, meet_irreducible_poset, upset_lattice, BirkhoffMap, UpSetFamily, UpSetLattice};
use crate::closure::{sublattices, Bounds};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::lattice::{lattice_isomorphism, Lattice};
use crate::poset::Poset;

#[derive(Clone, PartialEq, Eq)]
pub struct MonotonicOperator {
    name: String,
    carrier: Poset,
    values: Vec<ElemSet>,
}

impl std::fmt::Debug for MonotonicOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut map = f.debug_map();
        for (x, v) in self.values.iter().enumerate() {
            map.entry(&self.carrier.element_name(x), &v.label(self.carrier.names()));
        }
        map.finish()
    }
}

impl MonotonicOperator {
    pub fn new(name: &str, carrier: Poset, values: Vec<ElemSet>) -> Result<Self> {
        if values.len() != carrier.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} values for a carrier of {} elements",
                values.len(),
                carrier.len()
            )));
        }
        let full = carrier.full_set();
        if let Some(v) = values.iter().find(|v| !v.is_subset(full)) {
            return Err(Error::UnknownElement(format!("element set {v:?}")));
        }
        for x in 0..carrier.len() {
            for y in carrier.above(x) {
                if !values[x].is_superset(values[y]) {
                    return Err(Error::NotMonotone {
                        x: carrier.element_name(x).to_string(),
                        y: carrier.element_name(y).to_string(),
                    });
                }
            }
        }
        Ok(MonotonicOperator {
            name: name.to_string(),
            carrier,
            values,
        })
    }

    /// Builds `G` from `(element, members)` name lists; every element must
    /// be assigned exactly once.
    pub fn from_names<S: AsRef<str>>(
        name: &str,
        carrier: Poset,
        assign: &[(S, Vec<S>)],
    ) -> Result<Self> {
        let mut values = vec![None; carrier.len()];
        for (x, members) in assign {
            let xi = carrier.index_of(x.as_ref())?;
            let set = members
                .iter()
                .map(|m| carrier.index_of(m.as_ref()))
                .collect::<Result<ElemSet>>()?;
            if values[xi].replace(set).is_some() {
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
                        carrier.element_name(i)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MonotonicOperator::new(name, carrier, values)
    }

    /// `G(x) = c` for every `x`.
    pub fn constant(name: &str, carrier: Poset, value: ElemSet) -> Result<Self> {
        let n = carrier.len();
        MonotonicOperator::new(name, carrier, vec![value; n])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn values(&self) -> &[ElemSet] {
        &self.values
    }

    pub fn value(&self, x: usize) -> ElemSet {
        self.values[x]
    }

    pub fn value_label(&self, x: usize) -> String {
        self.values[x].label(self.carrier.names())
    }
}

/// `X/G` with its classes and the order inherited from `(G(X), ⊇)`.
#[derive(Debug, Clone)]
pub struct QuotientPoset {
    /// Members of each class, classes ordered by least member.
    pub classes: Vec<ElemSet>,
    /// Class index of every carrier element.
    pub class_of: Vec<usize>,
    /// The common value of `G` on each class.
    pub values: Vec<ElemSet>,
    /// The classes as a poset; class `k` is named `[r]` after its least member `r`.
    pub poset: Poset,
}

impl QuotientPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `S_T`: the union of the classes in `t`.
    pub fn unfold(&self, t: ElemSet) -> ElemSet {
        t.iter()
            .fold(ElemSet::EMPTY, |acc, k| acc.union(self.classes[k]))
    }
}

pub fn quotient(g: &MonotonicOperator) -> QuotientPoset {
    let x = g.carrier();
    let mut classes: Vec<ElemSet> = Vec::new();
    let mut values: Vec<ElemSet> = Vec::new();
    let mut class_of = Vec::with_capacity(x.len());
    for e in 0..x.len() {
        let v = g.value(e);
        let k = match values.iter().position(|&w| w == v) {
            Some(k) => k,
            None => {
                classes.push(ElemSet::EMPTY);
                values.push(v);
                classes.len() - 1
            }
        };
        classes[k].insert(e);
        class_of.push(k);
    }
    let names = classes
        .iter()
        .map(|c| format!("[{}]", x.element_name(c.first().expect("classes are nonempty"))))
        .collect();
    let poset = Poset::from_fn_unchecked(&format!("{}/{}", x.name(), g.name()), names, |a, b| {
        values[a].is_superset(values[b])
    });
    QuotientPoset {
        classes,
        class_of,
        values,
        poset,
    }
}

/// `𝒮_G`, sorted.
pub fn operator_family(g: &MonotonicOperator, caps: &Caps) -> Result<Vec<ElemSet>> {
    let q = quotient(g);
    let mut out: Vec<ElemSet> = q
        .poset
        .all_upsets(caps)?
        .into_iter()
        .map(|t| q.unfold(t.members()))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `F_{X/G}` placed inside `F_X` by `T ↦ S_T`, fully checked.
#[derive(Debug, Clone)]
pub struct EmbeddingWitness {
    /// `𝓕_X`.
    pub host: UpSetFamily,
    pub quotient: QuotientPoset,
    /// `𝓕_{X/G}`.
    pub quotient_upsets: UpSetFamily,
    /// `𝒮_G`.
    pub image: UpSetFamily,
    /// `image_index[t]` locates `S_T` in `image` for the `t`-th up-set of `X/G`.
    pub image_index: Vec<usize>,
}

/// Builds `𝒮_G` and checks that `T ↦ S_T` is a bijection onto a family of
/// up-sets of `X` that contains `∅` and `X`, is closed under union and
/// intersection, and preserves and reflects `⊇`, unions and intersections.
pub fn embedded_family(g: &MonotonicOperator, caps: &Caps) -> Result<EmbeddingWitness> {
    let x = g.carrier();
    let host = UpSetFamily::all(x.clone(), caps)?;
    let q = quotient(g);
    let quotient_upsets = UpSetFamily::all(q.poset.clone(), caps)?;
    let ts = quotient_upsets.sets();
    let unfolded: Vec<ElemSet> = ts.iter().map(|&t| q.unfold(t)).collect();
    let image = UpSetFamily::new(x.clone(), unfolded.iter().copied()).map_err(|e| match e {
        Error::NotAnUpSet(s) => certificate(g, format!("S_T = {s} is not an up-set of X")),
        other => other,
    })?;
    let fail = |msg: String| Err(certificate(g, msg));

    if image.len() != ts.len() {
        return fail("T -> S_T is not injective".into());
    }
    if !image.contains(ElemSet::EMPTY) || !image.contains(x.full_set()) {
        return fail("the empty set or the carrier is missing".into());
    }
    if let Some((a, b)) = image.union_gap().or_else(|| image.intersection_gap()) {
        return fail(format!(
            "not closed under union and intersection at {} and {}",
            image.label(a),
            image.label(b)
        ));
    }
    if let Some(s) = image.sets().iter().find(|&&s| !host.contains(s)) {
        return fail(format!("{} is not in F_X", image.label(*s)));
    }
    for (i, &t1) in ts.iter().enumerate() {
        for (j, &t2) in ts.iter().enumerate() {
            let (s1, s2) = (unfolded[i], unfolded[j]);
            if t1.is_superset(t2) != s1.is_superset(s2) {
                return fail("T -> S_T does not preserve and reflect inclusion".into());
            }
            if q.unfold(t1.union(t2)) != s1.union(s2)
                || q.unfold(t1.intersection(t2)) != s1.intersection(s2)
            {
                return fail("T -> S_T does not preserve union and intersection".into());
            }
        }
    }
    let image_index = unfolded
        .iter()
        .map(|&s| image.position(s).expect("image built from these sets"))
        .collect();
    Ok(EmbeddingWitness {
        host,
        quotient: q,
        quotient_upsets,
        image,
        image_index,
    })
}

fn certificate(g: &MonotonicOperator, msg: String) -> Error {
    Error::InternalDisagreement(format!("operator `{}`: {msg}", g.name()))
}

/// `G(x) = ⋂{p ∈ 𝒮 | x ∈ p}` for a family `𝒮` of up-sets containing `∅` and
/// the carrier and closed under union and intersection; checked to satisfy
/// `𝒮_G = 𝒮`.
pub fn canonical_operator(name: &str, family: &UpSetFamily, caps: &Caps) -> Result<MonotonicOperator> {
    if !family.is_complete_sublattice() {
        return Err(Error::PreconditionFailed(
            "family must contain the empty set and the carrier and be closed under union and intersection"
                .into(),
        ));
    }
    let x = family.carrier();
    let full = x.full_set();
    let values: Vec<ElemSet> = (0..x.len())
        .map(|e| {
            family
                .sets()
                .iter()
                .filter(|s| s.contains(e))
                .fold(full, |acc, &s| acc.intersection(s))
        })
        .collect();
    let g = MonotonicOperator::new(name, x.clone(), values)
        .map_err(|e| Error::VerificationFailed(format!("canonical operator: {e}")))?;
    let recovered = operator_family(&g, caps)?;
    if recovered != family.sets() {
        return Err(Error::VerificationFailed(format!(
            "canonical operator yields a family of {} sets instead of {}",
            recovered.len(),
            family.len()
        )));
    }
    Ok(g)
}

/// One candidate `{∅, M(L)}`-sublattice of `F_{M(L)}` with its operator.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub family: UpSetFamily,
    pub operator: MonotonicOperator,
    pub quotient: QuotientPoset,
    /// `F_{M(L)/G}`.
    pub upsets: UpSetLattice,
}

/// Everything about a host lattice `L` needed to decide `L0 ∈ E(L)` for
/// many `L0`.
#[derive(Debug, Clone)]
pub struct EmbeddingSearch {
    pub host: Lattice,
    pub map: BirkhoffMap,
    pub candidates: Vec<Candidate>,
}

/// Outcome of an embedding decision.
#[derive(Debug, Clone)]
pub enum EmbeddingVerdict {
    Embeds(Box<Embedding>),
    DoesNotEmbed,
}

impl EmbeddingVerdict {
    pub fn embeds(&self) -> bool {
        matches!(self, EmbeddingVerdict::Embeds(_))
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    /// Index into [`EmbeddingSearch::candidates`].
    pub candidate: usize,
    pub operator: MonotonicOperator,
    pub family: UpSetFamily,
    /// Isomorphism `L0 -> F_{M(L)/G}`.
    pub iso: Vec<usize>,
    /// The induced embedding `L0 -> L`, through `T ↦ S_T` and `f⁻¹`.
    pub into_host: Vec<usize>,
}

fn require_representable(l: &Lattice, caps: &Caps) -> Result<()> {
    let ok = l.is_distributive().holds() && l.has_dp().holds() && l.satisfies_m(caps)?.holds();
    if !ok {
        return Err(Error::PreconditionFailed(format!(
            "`{}` is not distributive with DP and (M)",
            l.name()
        )));
    }
    Ok(())
}

impl EmbeddingSearch {
    /// Enumerates the `{∅, M(L)}`-sublattices of `F_{M(L)}` in canonical
    /// order and builds the canonical operator of each.
    pub fn new(host: &Lattice, caps: &Caps) -> Result<Self> {
        require_representable(host, caps)?;
        let map = birkhoff_map(host)?;
        caps.check_family(map.family.len())?;
        let all = UpSetFamily::all(map.m_poset.clone(), caps)?;
        if all.len() != host.len() {
            return Err(Error::InternalDisagreement(format!(
                "`{}` passes distributivity, DP and (M) but F_M(L) has {} elements",
                host.name(),
                all.len()
            )));
        }
        let mut candidates = Vec::new();
        for (k, sets) in sublattices(&all, Bounds::Required, caps)?.into_iter().enumerate() {
            let family = UpSetFamily::from_sorted_unchecked(map.m_poset.clone(), sets);
            let operator = canonical_operator(&format!("G{k}"), &family, caps)?;
            let quotient = quotient(&operator);
            let upsets = upset_lattice(&quotient.poset, caps)?;
            candidates.push(Candidate {
                family,
                operator,
                quotient,
                upsets,
            });
        }
        Ok(EmbeddingSearch {
            host: host.clone(),
            map,
            candidates,
        })
    }

    /// All candidates whose `F_{M(L)/G}` is isomorphic to `l0`.
    pub fn witnesses(&self, l0: &Lattice) -> Vec<Embedding> {
        self.candidates
            .iter()
            .enumerate()
            .filter_map(|(k, c)| {
                lattice_isomorphism(l0, &c.upsets.lattice).map(|iso| self.embedding(k, iso))
            })
            .collect()
    }

    /// Sublattice leg: the first candidate in canonical order.
    pub fn sublattice_leg(&self, l0: &Lattice) -> Option<Embedding> {
        self.candidates.iter().enumerate().find_map(|(k, c)| {
            lattice_isomorphism(l0, &c.upsets.lattice).map(|iso| self.embedding(k, iso))
        })
    }

    fn embedding(&self, k: usize, iso: Vec<usize>) -> Embedding {
        let c = &self.candidates[k];
        let ts = c.upsets.family.sets();
        let into_host = iso
            .iter()
            .map(|&t| {
                let s = c.quotient.unfold(ts[t]);
                self.map
                    .image
                    .iter()
                    .position(|&f| f == s)
                    .expect("f is onto F_M(L)")
            })
            .collect();
        Embedding {
            candidate: k,
            operator: c.operator.clone(),
            family: c.family.clone(),
            iso,
            into_host,
        }
    }

    /// Decides `l0 ∈ E(L)` by both legs; they must agree.
    pub fn decide(&self, l0: &Lattice, caps: &Caps) -> Result<EmbeddingVerdict> {
        require_representable(l0, caps)?;
        let by_sublattice = self.sublattice_leg(l0);
        let direct = find_lattice_embedding(l0, &self.host, true);
        match (by_sublattice, direct) {
            (Some(e), Some(_)) => {
                if !is_bounded_embedding(l0, &self.host, &e.into_host) {
                    return Err(Error::InternalDisagreement(format!(
                        "witness operator for `{}` in `{}` does not induce an embedding",
                        l0.name(),
                        self.host.name()
                    )));
                }
                Ok(EmbeddingVerdict::Embeds(Box::new(e)))
            }
            (None, None) => Ok(EmbeddingVerdict::DoesNotEmbed),
            (s, d) => Err(Error::InternalDisagreement(format!(
                "`{}` into `{}`: sublattice search says {}, direct search says {}",
                l0.name(),
                self.host.name(),
                s.is_some(),
                d.is_some()
            ))),
        }
    }
}

/// Decides whether `l0` embeds into `l` preserving meets, joins, bottom and
/// top. Both lattices must be distributive with DP and (𝔐).
pub fn decide_embedding(l0: &Lattice, l: &Lattice, caps: &Caps) -> Result<EmbeddingVerdict> {
    EmbeddingSearch::new(l, caps)?.decide(l0, caps)
}

/// True when `map` is injective and preserves meets and joins, and also the
/// bounds when `preserve_bounds` holds.
pub fn is_lattice_embedding(l0: &Lattice, l: &Lattice, map: &[usize], preserve_bounds: bool) -> bool {
    if map.len() != l0.len() || map.iter().any(|&v| v >= l.len()) {
        return false;
    }
    let mut seen = vec![false; l.len()];
    if map.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
        return false;
    }
    if preserve_bounds && (map[l0.bottom()] != l.bottom() || map[l0.top()] != l.top()) {
        return false;
    }
    (0..l0.len()).all(|a| {
        (0..l0.len()).all(|b| {
            map[l0.meet(a, b)] == l.meet(map[a], map[b]) && map[l0.join(a, b)] == l.join(map[a], map[b])
        })
    })
}

fn is_bounded_embedding(l0: &Lattice, l: &Lattice, map: &[usize]) -> bool {
    is_lattice_embedding(l0, l, map, true)
}

/// Searches for an injective lattice homomorphism `l0 -> l`. Elements of
/// `l0` are assigned along a fixed linear extension, each trying targets in
/// index order, so the result is deterministic.
pub fn find_lattice_embedding(l0: &Lattice, l: &Lattice, preserve_bounds: bool) -> Option<Vec<usize>> {
    if l0.len() > l.len() {
        return None;
    }
    // assign along a linear extension so meets and joins of assigned pairs
    // are checked as early as possible
    let order = l0.order().linear_extension();
    let mut map = vec![usize::MAX; l0.len()];
    let mut used = vec![false; l.len()];
    if extend_embedding(l0, l, preserve_bounds, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend_embedding(
    l0: &Lattice,
    l: &Lattice,
    bounds: bool,
    order: &[usize],
    pos: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&a) = order.get(pos) else {
        return true;
    };
    let choices: Vec<usize> = if bounds && a == l0.bottom() && a == l0.top() {
        // a one-element lattice keeps both bounds only in a one-element host
        if l.bottom() == l.top() {
            vec![l.bottom()]
        } else {
            vec![]
        }
    } else if bounds && a == l0.bottom() {
        vec![l.bottom()]
    } else if bounds && a == l0.top() {
        vec![l.top()]
    } else {
        (0..l.len()).collect()
    };
    for v in choices {
        if used[v] {
            continue;
        }
        map[a] = v;
        if consistent(l0, l, &order[..=pos], map) {
            used[v] = true;
            if extend_embedding(l0, l, bounds, order, pos + 1, map, used) {
                return true;
            }
            used[v] = false;
        }
    }
    map[a] = usize::MAX;
    false
}

// Order-embedding against the newest element, and the homomorphism laws on
// every assigned pair whose meet or join is assigned too.
fn consistent(l0: &Lattice, l: &Lattice, assigned: &[usize], map: &[usize]) -> bool {
    let &a = assigned.last().expect("at least one assigned");
    let va = map[a];
    for &b in assigned {
        let vb = map[b];
        if l0.leq(a, b) != l.leq(va, vb) || l0.leq(b, a) != l.leq(vb, va) {
            return false;
        }
    }
    for &b in assigned {
        for &c in assigned {
            let m = l0.meet(b, c);
            if map[m] != usize::MAX && map[m] != l.meet(map[b], map[c]) {
                return false;
            }
            let j = l0.join(b, c);
            if map[j] != usize::MAX && map[j] != l.join(map[b], map[c]) {
                return false;
            }
        }
    }
    true
}

/// The operator on the coatoms of a finite boolean lattice that realizes a
/// given sublattice image `𝒮` of `𝒫(M(L))`.
#[derive(Debug, Clone)]
pub struct BooleanConstruction {
    /// `𝒮' = {T ∖ 1_𝒮 | T ∈ 𝒮}`.
    pub shifted: UpSetFamily,
    /// `0_{𝒮'}`, the largest member of `𝒮'`.
    pub support: ElemSet,
    /// The chosen element `w ∈ 0_{𝒮'}` (least index).
    pub anchor: usize,
    pub operator: MonotonicOperator,
    /// Isomorphism `(𝒮, ⊇) -> F_{M(L)/G}`.
    pub iso: Vec<usize>,
}

/// For a finite boolean `L` and a family `𝒮` of subsets of `M(L)` closed
/// under union and intersection with at least two members, builds
/// `G(x) = μ(x)` on `0_{𝒮'}` and `G(x) = μ(w)` elsewhere, where
/// `μ(x) = ⋂{p ∈ 𝒮' | x ∈ p}`, and checks `(𝒮, ⊇) ≅ F_{M(L)/G}`.
pub fn boolean_embedding_operator(
    l: &Lattice,
    family: &UpSetFamily,
    caps: &Caps,
) -> Result<BooleanConstruction> {
    if !l.is_atomic_boolean() {
        return Err(Error::PreconditionFailed(format!("`{}` is not boolean", l.name())));
    }
    let m_poset = meet_irreducible_poset(l);
    if !family.carrier().same_order(&m_poset) {
        return Err(Error::CarrierMismatch);
    }
    if family.len() < 2 || family.union_gap().is_some() || family.intersection_gap().is_some() {
        return Err(Error::PreconditionFailed(
            "the image must have at least two members and be closed under union and intersection"
                .into(),
        ));
    }
    let sets = family.sets();
    let top = sets.iter().fold(m_poset.full_set(), |acc, &s| acc.intersection(s));
    let shifted_sets: Vec<ElemSet> = sets.iter().map(|&s| s.difference(top)).collect();
    let shifted = UpSetFamily::new(m_poset.clone(), shifted_sets)?;
    let support = shifted
        .sets()
        .iter()
        .fold(ElemSet::EMPTY, |acc, &s| acc.union(s));
    let anchor = support
        .first()
        .ok_or_else(|| Error::VerificationFailed("0_S' is empty".into()))?;
    let mu = |x: usize| {
        shifted
            .sets()
            .iter()
            .filter(|s| s.contains(x))
            .fold(support, |acc, &s| acc.intersection(s))
    };
    let values: Vec<ElemSet> = (0..m_poset.len())
        .map(|x| if support.contains(x) { mu(x) } else { mu(anchor) })
        .collect();
    let operator = MonotonicOperator::new("G", m_poset, values)
        .map_err(|e| Error::VerificationFailed(format!("constructed operator: {e}")))?;
    let image = family.to_lattice("S", caps)?;
    let q = quotient(&operator);
    let f = upset_lattice(&q.poset, caps)?.lattice;
    let iso = lattice_isomorphism(&image, &f).ok_or_else(|| {
        Error::VerificationFailed(format!(
            "(S, ⊇) has {} elements but F_M(L)/G has {} and they are not isomorphic",
            image.len(),
            f.len()
        ))
    })?;
    Ok(BooleanConstruction {
        shifted,
        support,
        anchor,
        operator,
        iso,
    })
}
