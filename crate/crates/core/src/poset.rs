//! Finite posets.
//!
//! A [`Poset`] stores its order as a dense bit matrix together with the cover
//! relation (its transitive reduction). Elements carry a fixed index, so every
//! derived list of elements or sets comes out in a reproducible order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::bits::ElemSet;
use crate::config::Caps;
use crate::error::{Error, Result};

/// Square boolean matrix with one bit-packed row per element.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row(i) |= row(k)`
    fn or_row_into(&mut self, k: usize, i: usize) {
        if i == k {
            return;
        }
        let w = self.words;
        let (src, dst) = if k < i {
            let (lo, hi) = self.data.split_at_mut(i * w);
            (&lo[k * w..(k + 1) * w], &mut hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(k * w);
            (&hi[..w], &mut lo[i * w..(i + 1) * w])
        };
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= *s;
        }
    }

    fn row_subset(&self, a: usize, b: usize) -> bool {
        self.row(a).iter().zip(self.row(b)).all(|(x, y)| x & !y == 0)
    }

    fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.ones(i) {
                t.set(j, i);
            }
        }
        t
    }

    fn ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            ElemSet::from_bits(word).iter().map(move |b| w * 64 + b)
        })
    }

    fn closure(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.or_row_into(k, i);
                }
            }
        }
    }
}

/// A finite partially ordered set with named elements.
#[derive(Clone)]
pub struct Poset {
    name: String,
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: BitMatrix,
    down: BitMatrix,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.names == other.names && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("Poset")
            .field("name", &self.name)
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

/// Names are whitespace-free tokens not starting with `#`, with balanced
/// brackets and no comma outside them, so that they can appear inside
/// braced set literals such as `{(x,y),{a,b}}`.
pub(crate) fn validate_name(name: &str) -> Result<()> {
    let invalid = || Err(Error::InvalidName(name.to_string()));
    if name.is_empty() || name.chars().any(char::is_whitespace) || name.starts_with('#') {
        return invalid();
    }
    let mut stack = Vec::new();
    for ch in name.chars() {
        match ch {
            '{' | '(' | '[' => stack.push(ch),
            '}' | ')' | ']' => {
                let open = match ch {
                    '}' => '{',
                    ')' => '(',
                    _ => '[',
                };
                if stack.pop() != Some(open) {
                    return invalid();
                }
            }
            ',' if stack.is_empty() => return invalid(),
            _ => {}
        }
    }
    if !stack.is_empty() {
        return invalid();
    }
    Ok(())
}

fn name_index(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        validate_name(n)?;
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `pairs`, where `(a, b)` means `a <= b`.
    pub fn new<S, T>(name: &str, elements: &[S], pairs: &[(T, T)]) -> Result<Poset>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = name_index(&names)?;
        let resolve = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            edges.push((resolve(a.as_ref())?, resolve(b.as_ref())?));
        }
        Self::from_edges(name, names, index, &edges)
    }

    /// Index-level variant of [`Poset::new`].
    pub fn from_relation(name: &str, names: Vec<String>, edges: &[(usize, usize)]) -> Result<Poset> {
        let index = name_index(&names)?;
        for &(a, b) in edges {
            for i in [a, b] {
                if i >= names.len() {
                    return Err(Error::UnknownElement(format!("#{i}")));
                }
            }
        }
        Self::from_edges(name, names, index, edges)
    }

    fn from_edges(
        name: &str,
        names: Vec<String>,
        index: HashMap<String, usize>,
        edges: &[(usize, usize)],
    ) -> Result<Poset> {
        let n = names.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            up.set(i, i);
        }
        for &(a, b) in edges {
            up.set(a, b);
        }
        up.closure();
        for a in 0..n {
            for b in a + 1..n {
                if up.get(a, b) && up.get(b, a) {
                    let cycle = witness_cycle(n, edges, a, b)
                        .into_iter()
                        .map(|i| names[i].clone())
                        .collect();
                    return Err(Error::CycleDetected(cycle));
                }
            }
        }
        Ok(Self::assemble(name.to_string(), names, index, up))
    }

    /// Builds a poset from an order predicate, validating the partial-order
    /// axioms instead of taking a closure.
    pub fn from_fn(
        name: &str,
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Poset> {
        let index = name_index(&names)?;
        let n = names.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up.set(i, j);
                }
            }
        }
        for i in 0..n {
            if !up.get(i, i) {
                return Err(Error::PreconditionFailed(format!(
                    "order is not reflexive at `{}`",
                    names[i]
                )));
            }
            for j in i + 1..n {
                if up.get(i, j) && up.get(j, i) {
                    return Err(Error::CycleDetected(vec![
                        names[i].clone(),
                        names[j].clone(),
                        names[i].clone(),
                    ]));
                }
            }
        }
        // transitive iff every row contains the rows of its members
        for i in 0..n {
            for j in up.ones(i).collect::<Vec<_>>() {
                if !up.row_subset(j, i) {
                    let k = up.ones(j).find(|&k| !up.get(i, k)).unwrap_or(j);
                    return Err(Error::PreconditionFailed(format!(
                        "order is not transitive: {} <= {} <= {}",
                        names[i], names[j], names[k]
                    )));
                }
            }
        }
        Ok(Self::assemble(name.to_string(), names, index, up))
    }

    /// Trusted constructor for orders that are partial orders by construction.
    pub(crate) fn from_fn_unchecked(
        name: &str,
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Poset {
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        debug_assert_eq!(index.len(), names.len());
        let n = names.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up.set(i, j);
                }
            }
        }
        Self::assemble(name.to_string(), names, index, up)
    }

    fn assemble(name: String, names: Vec<String>, index: HashMap<String, usize>, up: BitMatrix) -> Poset {
        let n = names.len();
        let down = up.transpose();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for i in 0..n {
            for j in up.ones(i) {
                if j == i {
                    continue;
                }
                // i < j is a cover iff nothing lies strictly between
                let between = up
                    .row(i)
                    .iter()
                    .zip(down.row(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>();
                if between == 2 {
                    upper_covers[i].push(j);
                    lower_covers[j].push(i);
                }
            }
        }
        Poset {
            name,
            names,
            index,
            up,
            down,
            upper_covers,
            lower_covers,
        }
    }

    /// The chain `x1 < x2 < ... < xn`.
    pub fn chain(n: usize) -> Poset {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Poset::from_fn_unchecked(&format!("chain{n}"), names, |a, b| a <= b)
    }

    /// `n` pairwise incomparable elements `x1 ... xn`.
    pub fn antichain(n: usize) -> Poset {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Poset::from_fn_unchecked(&format!("antichain{n}"), names, |a, b| a == b)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Poset {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up.get(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Elements `j >= i`, ascending.
    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.up.ones(i)
    }

    /// Elements `j <= i`, ascending.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.down.ones(i)
    }

    pub fn count_above(&self, i: usize) -> usize {
        self.up.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_below(&self, i: usize) -> usize {
        self.down.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The Hasse diagram as `(lower, upper)` index pairs in lexicographic order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .upper_covers
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    /// Length of the longest chain ending at each element, counted in covers.
    pub fn heights(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut h = vec![0; self.len()];
        for &i in &order {
            for &j in &self.upper_covers[i] {
                h[j] = h[j].max(h[i] + 1);
            }
        }
        h
    }

    /// Length of the longest chain starting at each element, counted in covers.
    pub fn depths(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut d = vec![0; self.len()];
        for &i in order.iter().rev() {
            for &j in &self.lower_covers[i] {
                d[j] = d[j].max(d[i] + 1);
            }
        }
        d
    }

    /// A linear extension, lowest elements first, ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|i| self.lower_covers[i].len()).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(i) = ready.pop_first() {
            out.push(i);
            for &j in &self.upper_covers[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        out
    }

    fn require_small(&self) -> Result<()> {
        if self.len() > ElemSet::CAPACITY {
            return Err(Error::cap("poset size", ElemSet::CAPACITY, self.len()));
        }
        Ok(())
    }

    /// `{y | y >= x}` as a set. Requires at most 64 elements.
    pub fn up_mask(&self, x: usize) -> ElemSet {
        debug_assert!(self.len() <= ElemSet::CAPACITY);
        ElemSet::from_bits(self.up.row(x)[0])
    }

    /// `{y | y <= x}` as a set. Requires at most 64 elements.
    pub fn down_mask(&self, x: usize) -> ElemSet {
        debug_assert!(self.len() <= ElemSet::CAPACITY);
        ElemSet::from_bits(self.down.row(x)[0])
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn is_upset(&self, set: ElemSet) -> bool {
        set.is_subset(self.full_set()) && set.iter().all(|x| self.up_mask(x).is_subset(set))
    }

    pub fn is_downset(&self, set: ElemSet) -> bool {
        set.is_subset(self.full_set()) && set.iter().all(|x| self.down_mask(x).is_subset(set))
    }

    pub fn is_antichain(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|x| self.up_mask(x).intersection(set) == ElemSet::singleton(x))
    }

    /// Smallest up-set containing `set`.
    pub fn upward_closure(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(self.up_mask(x)))
    }

    /// Minimal members of `set`.
    pub fn minimal_of(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&x| self.down_mask(x).intersection(set) == ElemSet::singleton(x))
            .collect()
    }

    pub fn upset(&self, set: ElemSet) -> Result<UpSet> {
        self.require_small()?;
        if self.is_upset(set) {
            Ok(UpSet(set))
        } else {
            Err(Error::NotAnUpSet(set.label(&self.names)))
        }
    }

    /// `{y | y >= x}`.
    pub fn principal_upset(&self, x: usize) -> Result<UpSet> {
        self.require_small()?;
        if x >= self.len() {
            return Err(Error::UnknownElement(format!("#{x}")));
        }
        Ok(UpSet(self.up_mask(x)))
    }

    pub fn principal_upset_of(&self, name: &str) -> Result<UpSet> {
        self.principal_upset(self.index_of(name)?)
    }

    /// Every up-set exactly once, sorted by bitset value (so `∅` comes first).
    pub fn all_upsets(&self, caps: &Caps) -> Result<Vec<UpSet>> {
        caps.check_poset(self.len())?;
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        self.upsets_rec(&order, 0, ElemSet::EMPTY, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    /// Number of up-sets, without materializing them.
    pub fn count_upsets(&self, caps: &Caps) -> Result<usize> {
        caps.check_poset(self.len())?;
        let mut order = self.linear_extension();
        order.reverse();
        Ok(self.count_rec(&order, 0, ElemSet::EMPTY))
    }

    // Decides elements top-down; an element may join only when everything
    // above it already has, so every leaf is an up-set.
    fn upsets_rec(&self, order: &[usize], pos: usize, cur: ElemSet, out: &mut Vec<UpSet>) {
        let Some(&x) = order.get(pos) else {
            out.push(UpSet(cur));
            return;
        };
        self.upsets_rec(order, pos + 1, cur, out);
        if self.upper_covers[x].iter().all(|&y| cur.contains(y)) {
            self.upsets_rec(order, pos + 1, cur.with(x), out);
        }
    }

    fn count_rec(&self, order: &[usize], pos: usize, cur: ElemSet) -> usize {
        let Some(&x) = order.get(pos) else {
            return 1;
        };
        let mut total = self.count_rec(order, pos + 1, cur);
        if self.upper_covers[x].iter().all(|&y| cur.contains(y)) {
            total += self.count_rec(order, pos + 1, cur.with(x));
        }
        total
    }

    /// Calls `visit` on every antichain contained in `within`, in order of
    /// increasing size, stopping early when `visit` returns `false`.
    /// Returns `false` if stopped early.
    pub fn for_each_antichain_within(
        &self,
        within: ElemSet,
        mut visit: impl FnMut(ElemSet) -> bool,
    ) -> bool {
        let members: Vec<usize> = within.iter().collect();
        for k in 0..=members.len() {
            let mut level = Vec::new();
            self.antichains_of_size(&members, 0, k, ElemSet::EMPTY, &mut level);
            level.sort_unstable();
            for a in level {
                if !visit(a) {
                    return false;
                }
            }
        }
        true
    }

    fn antichains_of_size(
        &self,
        members: &[usize],
        start: usize,
        k: usize,
        cur: ElemSet,
        out: &mut Vec<ElemSet>,
    ) {
        if cur.len() == k {
            out.push(cur);
            return;
        }
        for (pos, &x) in members.iter().enumerate().skip(start) {
            if members.len() - pos < k - cur.len() {
                break;
            }
            if cur.iter().all(|y| !self.comparable(x, y)) {
                self.antichains_of_size(members, pos + 1, k, cur.with(x), out);
            }
        }
    }

    /// All maximal chains, bottom to top, in lexicographic order of indices.
    pub fn maximal_chains(&self, caps: &Caps) -> Result<Vec<Vec<usize>>> {
        caps.check_poset(self.len())?;
        Ok(self.maximal_chains_unchecked())
    }

    pub(crate) fn maximal_chains_unchecked(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for m in self.minimal_elements() {
            self.chains_rec(m, &mut path, &mut out);
        }
        out
    }

    fn chains_rec(&self, x: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(x);
        if self.upper_covers[x].is_empty() {
            out.push(path.clone());
        } else {
            for &y in &self.upper_covers[x] {
                self.chains_rec(y, path, out);
            }
        }
        path.pop();
    }

    /// Same element names and the same order, ignoring the poset's name.
    pub fn same_order(&self, other: &Poset) -> bool {
        self.names == other.names && self.up == other.up
    }

    /// The order-dual `(P, >=)`.
    pub fn dual(&self) -> Poset {
        Poset::from_fn_unchecked(&format!("{}_dual", self.name), self.names.clone(), |a, b| {
            self.leq(b, a)
        })
    }

    /// Sub-poset induced on `members` (kept in the given order).
    pub fn induced(&self, name: &str, members: &[usize]) -> Poset {
        let names = members.iter().map(|&i| self.names[i].clone()).collect();
        Poset::from_fn_unchecked(name, names, |a, b| self.leq(members[a], members[b]))
    }

    /// Same order with the elements renamed.
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset> {
        assert_eq!(names.len(), self.len());
        let index = name_index(&names)?;
        Ok(Poset {
            name: self.name.clone(),
            names,
            index,
            up: self.up.clone(),
            down: self.down.clone(),
            upper_covers: self.upper_covers.clone(),
            lower_covers: self.lower_covers.clone(),
        })
    }
}

// Shortest directed path a -> b followed by b -> a in the raw relation.
fn witness_cycle(n: usize, edges: &[(usize, usize)], a: usize, b: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in edges {
        if x != y {
            adj[x].push(y);
        }
    }
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in &adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut p = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            p.push(cur);
        }
        p.reverse();
        p
    };
    let mut cycle = path(a, b);
    cycle.extend(path(b, a).into_iter().skip(1));
    cycle
}

/// An up-set of some poset, stored as its member set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UpSet(pub(crate) ElemSet);

impl UpSet {
    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn label(self, carrier: &Poset) -> String {
        self.0.label(carrier.names())
    }
}
