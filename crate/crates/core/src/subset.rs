//! Subsets of a small finite universe, configurations of the Boolean
//! lattice, and the superset zeta/Möbius transforms.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Largest supported universe.
pub const MAX_UNIVERSE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("universe of size {0} exceeds the limit of {MAX_UNIVERSE}")]
    UniverseTooLarge(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("arguments live in different universes")]
    UniverseMismatch,
    #[error("integer overflow in transform")]
    Overflow,
    #[error("mask {0:#x} lies outside the universe")]
    OutOfRange(u32),
}

impl SubsetError {
    pub fn name(&self) -> &'static str {
        match self {
            SubsetError::UniverseTooLarge(_) => "UniverseTooLarge",
            SubsetError::DuplicateLabel(_) => "DuplicateLabel",
            SubsetError::UnknownLabel(_) => "UnknownLabel",
            SubsetError::UniverseMismatch => "UniverseMismatch",
            SubsetError::Overflow => "OverflowError",
            SubsetError::OutOfRange(_) => "OutOfRange",
        }
    }
}

/// An ordered list of element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Arc<Universe>, SubsetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_UNIVERSE {
            return Err(SubsetError::UniverseTooLarge(labels.len()));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(SubsetError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(Universe { labels, index }))
    }

    /// Universe labelled `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> Result<Arc<Universe>, SubsetError> {
        Universe::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Mask with every element set.
    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask, SubsetError> {
        let mut m = 0u32;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .position(l)
                .ok_or_else(|| SubsetError::UnknownLabel(l.to_string()))?;
            m |= 1 << i;
        }
        Ok(SubsetMask(m))
    }

    /// Parses `"{a,c}"`, `"a,c"`, `"{}"` or `""`.
    pub fn parse_subset(&self, text: &str) -> Result<SubsetMask, SubsetError> {
        let t = text.trim();
        let t = t.strip_prefix('{').unwrap_or(t);
        let t = t.strip_suffix('}').unwrap_or(t);
        let parts: Vec<&str> = t.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        self.mask_of(&parts)
    }

    pub fn labels_of(&self, m: SubsetMask) -> Vec<String> {
        m.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,c}` style rendering.
    pub fn render(&self, m: SubsetMask) -> String {
        format!("{{{}}}", self.labels_of(m).join(","))
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Universe>) -> bool {
        Arc::ptr_eq(self, other) || self.labels == other.labels
    }
}

/// A subset of a universe of at most 24 elements, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> SubsetMask {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> SubsetMask {
        SubsetMask(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> SubsetMask {
        SubsetMask(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> SubsetMask {
        SubsetMask(self.0 & !(1 << i))
    }

    pub fn union(self, o: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | o.0)
    }

    pub fn intersection(self, o: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & o.0)
    }

    pub fn difference(self, o: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SubsetMask) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: SubsetMask) -> bool {
        self.0 & o.0 == 0
    }

    /// +1 for even cardinality, -1 for odd.
    pub fn parity_sign(self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut cur: Option<u32> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full {
                None
            } else {
                Some((c.wrapping_sub(full)) & full)
            };
            Some(SubsetMask(c))
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Why a disjoint union or a set complement is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpFailure {
    /// The operands of a disjoint union share this atom.
    Overlap(usize),
    /// The subtrahend has this atom, which the minuend lacks.
    NotSubset(usize),
    Mismatch,
}

/// Sets of atoms on which the dot operations act: element sets (atom =
/// element) and configurations (atom = member subset).
pub trait AtomSet: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync {
    fn empty_like(&self) -> Self;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn contains_atom(&self, a: usize) -> bool;
    fn atoms(&self) -> Vec<usize>;
    /// A set over the same ambient space with exactly these atoms.
    fn with_atoms(&self, atoms: &[usize]) -> Self;
    fn compatible(&self, o: &Self) -> bool;
    fn union(&self, o: &Self) -> Self;
    fn intersection(&self, o: &Self) -> Self;
    fn difference(&self, o: &Self) -> Self;
    fn is_subset(&self, o: &Self) -> bool;
    fn is_disjoint(&self, o: &Self) -> bool {
        self.intersection(o).is_empty()
    }
    fn render(&self) -> String;

    /// `self ⊔ o`, defined when the operands are disjoint.
    fn dunion(&self, o: &Self) -> Result<Self, OpFailure> {
        if !self.compatible(o) {
            return Err(OpFailure::Mismatch);
        }
        let common = self.intersection(o);
        match common.atoms().first() {
            Some(&a) => Err(OpFailure::Overlap(a)),
            None => Ok(self.union(o)),
        }
    }

    /// `self ∖̇ o`, defined when `o ⊆ self`.
    fn scomp(&self, o: &Self) -> Result<Self, OpFailure> {
        if !self.compatible(o) {
            return Err(OpFailure::Mismatch);
        }
        let extra = o.difference(self);
        match extra.atoms().first() {
            Some(&a) => Err(OpFailure::NotSubset(a)),
            None => Ok(self.difference(o)),
        }
    }
}

impl AtomSet for SubsetMask {
    fn empty_like(&self) -> Self {
        SubsetMask::EMPTY
    }
    fn len(&self) -> usize {
        SubsetMask::len(*self)
    }
    fn contains_atom(&self, a: usize) -> bool {
        self.contains(a)
    }
    fn atoms(&self) -> Vec<usize> {
        self.iter().collect()
    }
    fn with_atoms(&self, atoms: &[usize]) -> Self {
        atoms.iter().fold(SubsetMask::EMPTY, |m, &a| m.with(a))
    }
    fn compatible(&self, _: &Self) -> bool {
        true
    }
    fn union(&self, o: &Self) -> Self {
        SubsetMask::union(*self, *o)
    }
    fn intersection(&self, o: &Self) -> Self {
        SubsetMask::intersection(*self, *o)
    }
    fn difference(&self, o: &Self) -> Self {
        SubsetMask::difference(*self, *o)
    }
    fn is_subset(&self, o: &Self) -> bool {
        SubsetMask::is_subset(*self, *o)
    }
    fn is_disjoint(&self, o: &Self) -> bool {
        SubsetMask::is_disjoint(*self, *o)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// A configuration: a set of subsets of the universe, stored as a dense
/// bitvector indexed by mask.
#[derive(Clone)]
pub struct Config {
    universe: Arc<Universe>,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl Config {
    pub fn empty(universe: &Arc<Universe>) -> Config {
        Config {
            universe: universe.clone(),
            words: vec![0; word_count(universe.len())],
        }
    }

    /// The whole Boolean lattice.
    pub fn full(universe: &Arc<Universe>) -> Config {
        let mut c = Config::empty(universe);
        for m in universe.full_mask().subsets() {
            c.insert(m);
        }
        c
    }

    pub fn from_masks<I: IntoIterator<Item = SubsetMask>>(
        universe: &Arc<Universe>,
        masks: I,
    ) -> Result<Config, SubsetError> {
        let mut c = Config::empty(universe);
        let full = universe.full_mask();
        for m in masks {
            if !m.is_subset(full) {
                return Err(SubsetError::OutOfRange(m.0));
            }
            c.insert(m);
        }
        Ok(c)
    }

    /// The principal downset of `x`.
    pub fn principal(universe: &Arc<Universe>, x: SubsetMask) -> Config {
        let mut c = Config::empty(universe);
        for y in x.subsets() {
            c.insert(y);
        }
        c
    }

    /// The principal upset of `z`.
    pub fn principal_up(universe: &Arc<Universe>, z: SubsetMask) -> Config {
        let mut c = Config::empty(universe);
        let rest = universe.full_mask().difference(z);
        for y in rest.subsets() {
            c.insert(y.union(z));
        }
        c
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Number of elements of the underlying universe.
    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn contains(&self, m: SubsetMask) -> bool {
        let i = m.0 as usize;
        i < (1usize << self.n()) && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, m: SubsetMask) {
        let i = m.0 as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, m: SubsetMask) {
        let i = m.0 as usize;
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Members in increasing numeric order.
    pub fn members(&self) -> Vec<SubsetMask> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push(SubsetMask((wi * 64 + b) as u32));
            }
        }
        out
    }

    /// Members ordered by cardinality, then by mask.
    pub fn members_graded(&self) -> Vec<SubsetMask> {
        let mut v = self.members();
        v.sort_by_key(|m| (m.len(), m.0));
        v
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_subset_of(&self, o: &Config) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_downset(&self) -> bool {
        self.members()
            .into_iter()
            .all(|x| x.iter().all(|i| self.contains(x.without(i))))
    }

    /// Members with no strict superset in the configuration.
    pub fn maximal(&self) -> Vec<SubsetMask> {
        let ms = self.members();
        let n = self.n();
        ms.iter()
            .copied()
            .filter(|x| (0..n).all(|i| x.contains(i) || !self.contains(x.with(i))))
            .collect()
    }

    /// Elements of the universe lying in at least one member.
    pub fn support(&self) -> SubsetMask {
        self.members().into_iter().fold(SubsetMask::EMPTY, SubsetMask::union)
    }

    /// `Σ (-1)^|X|` over the members.
    pub fn euler(&self) -> i64 {
        self.members().into_iter().map(|m| m.parity_sign()).sum()
    }

    /// Indicator as an integer function.
    pub fn indicator(&self) -> IntFunc {
        let mut f = IntFunc::zero(&self.universe);
        for m in self.members() {
            f.values[m.0 as usize] = 1;
        }
        f
    }

    /// Whether the members form a connected subgraph of the hypercube.
    pub fn is_connected(&self) -> bool {
        let ms = self.members();
        let Some(&start) = ms.first() else {
            return true;
        };
        let mut seen = Config::empty(&self.universe);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for i in 0..self.n() {
                let y = SubsetMask(x.0 ^ 1 << i);
                if self.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached == ms.len()
    }

    /// Shortest hypercube path inside the configuration. Neighbours are
    /// explored in increasing mask order, so ties resolve toward smaller
    /// masks.
    pub fn shortest_path(&self, from: SubsetMask, to: SubsetMask) -> Option<Vec<SubsetMask>> {
        if !self.contains(from) || !self.contains(to) {
            return None;
        }
        let mut prev: HashMap<SubsetMask, SubsetMask> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            let mut nbrs: Vec<SubsetMask> = (0..self.n()).map(|i| SubsetMask(x.0 ^ 1 << i)).collect();
            nbrs.sort();
            for y in nbrs {
                if self.contains(y) && !prev.contains_key(&y) {
                    prev.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Smallest downset containing the configuration.
    pub fn downset_closure(&self) -> Config {
        let mut c = Config::empty(&self.universe);
        for x in self.maximal() {
            for y in x.subsets() {
                c.insert(y);
            }
        }
        c
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .members_graded()
            .into_iter()
            .map(|m| self.universe.render(m))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl PartialEq for Config {
    fn eq(&self, o: &Self) -> bool {
        self.words == o.words && self.n() == o.n()
    }
}

impl Eq for Config {}

impl Hash for Config {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl PartialOrd for Config {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Config {
    /// Numeric order of the bitvectors.
    fn cmp(&self, o: &Self) -> Ordering {
        self.n()
            .cmp(&o.n())
            .then_with(|| self.words.iter().rev().cmp(o.words.iter().rev()))
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl AtomSet for Config {
    fn empty_like(&self) -> Self {
        Config::empty(&self.universe)
    }
    fn len(&self) -> usize {
        self.count()
    }
    fn contains_atom(&self, a: usize) -> bool {
        self.contains(SubsetMask(a as u32))
    }
    fn atoms(&self) -> Vec<usize> {
        self.members().into_iter().map(|m| m.0 as usize).collect()
    }
    fn with_atoms(&self, atoms: &[usize]) -> Self {
        let mut c = Config::empty(&self.universe);
        for &a in atoms {
            c.insert(SubsetMask(a as u32));
        }
        c
    }
    fn compatible(&self, o: &Self) -> bool {
        self.universe.same_as(&o.universe)
    }
    fn union(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a | b)
    }
    fn intersection(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a & b)
    }
    fn difference(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a & !b)
    }
    fn is_subset(&self, o: &Self) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & !b == 0)
    }
    fn is_disjoint(&self, o: &Self) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & b == 0)
    }
    fn render(&self) -> String {
        Config::render(self)
    }
}

impl Config {
    fn zip(&self, o: &Config, f: impl Fn(u64, u64) -> u64) -> Config {
        Config {
            universe: self.universe.clone(),
            words: self.words.iter().zip(&o.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

/// Disjoint union; `None` if the operands overlap.
pub fn dunion<T: AtomSet>(a: &T, b: &T) -> Option<T> {
    a.dunion(b).ok()
}

/// Set complement `a ∖̇ b`; `None` unless `b ⊆ a`.
pub fn scomp<T: AtomSet>(a: &T, b: &T) -> Option<T> {
    a.scomp(b).ok()
}

/// An integer function on the subsets of a universe.
#[derive(Clone, PartialEq, Eq)]
pub struct IntFunc {
    universe: Arc<Universe>,
    values: Vec<i32>,
}

impl IntFunc {
    pub fn zero(universe: &Arc<Universe>) -> IntFunc {
        IntFunc {
            universe: universe.clone(),
            values: vec![0; 1 << universe.len()],
        }
    }

    pub fn from_values(universe: &Arc<Universe>, values: Vec<i32>) -> Result<IntFunc, SubsetError> {
        if values.len() != 1 << universe.len() {
            return Err(SubsetError::UniverseMismatch);
        }
        Ok(IntFunc {
            universe: universe.clone(),
            values,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn get(&self, m: SubsetMask) -> i32 {
        self.values[m.0 as usize]
    }

    pub fn set(&mut self, m: SubsetMask, v: i32) {
        self.values[m.0 as usize] = v;
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Masks with a nonzero value, in increasing order.
    pub fn support(&self) -> Vec<SubsetMask> {
        (0..self.values.len())
            .filter(|&i| self.values[i] != 0)
            .map(|i| SubsetMask(i as u32))
            .collect()
    }
}

impl fmt::Debug for IntFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for s in self.support() {
            m.entry(&self.universe.render(s), &self.get(s));
        }
        m.finish()
    }
}

/// `g(X) = Σ_{Y ⊇ X} f(Y)`.
pub fn superset_zeta(f: &IntFunc) -> Result<IntFunc, SubsetError> {
    let mut v = f.values.clone();
    let n = f.universe.len();
    for i in 0..n {
        let bit = 1usize << i;
        for x in 0..v.len() {
            if x & bit == 0 {
                v[x] = v[x].checked_add(v[x | bit]).ok_or(SubsetError::Overflow)?;
            }
        }
    }
    IntFunc::from_values(&f.universe, v)
}

/// Inverse of [`superset_zeta`].
pub fn superset_mobius(g: &IntFunc) -> Result<IntFunc, SubsetError> {
    let mut v = g.values.clone();
    let n = g.universe.len();
    for i in 0..n {
        let bit = 1usize << i;
        for x in 0..v.len() {
            if x & bit == 0 {
                v[x] = v[x].checked_sub(v[x | bit]).ok_or(SubsetError::Overflow)?;
            }
        }
    }
    IntFunc::from_values(&g.universe, v)
}

/// Isomorphism between the upset `F(z)` and the Boolean lattice on the
/// remaining elements, `X' ↦ X' ∪ z`.
#[derive(Debug, Clone)]
pub struct Relative {
    pub outer: Arc<Universe>,
    pub inner: Arc<Universe>,
    pub z: SubsetMask,
    free: Vec<usize>,
}

impl Relative {
    pub fn new(outer: &Arc<Universe>, z: SubsetMask) -> Relative {
        let free: Vec<usize> = (0..outer.len()).filter(|&i| !z.contains(i)).collect();
        let inner =
            Universe::new(free.iter().map(|&i| outer.label(i).to_string())).expect("subuniverse of a valid universe");
        Relative {
            outer: outer.clone(),
            inner,
            z,
            free,
        }
    }

    /// `X ↦ X ∖ z`, only meaningful for `X ⊇ z`.
    pub fn down(&self, x: SubsetMask) -> SubsetMask {
        let mut m = SubsetMask::EMPTY;
        for (j, &i) in self.free.iter().enumerate() {
            if x.contains(i) {
                m = m.with(j);
            }
        }
        m
    }

    pub fn up(&self, y: SubsetMask) -> SubsetMask {
        let mut m = self.z;
        for j in y.iter() {
            m = m.with(self.free[j]);
        }
        m
    }

    /// Members of `c` above `z`, transported inward.
    pub fn down_config(&self, c: &Config) -> Config {
        let mut out = Config::empty(&self.inner);
        for x in c.members() {
            if self.z.is_subset(x) {
                out.insert(self.down(x));
            }
        }
        out
    }

    pub fn up_config(&self, c: &Config) -> Config {
        let mut out = Config::empty(&self.outer);
        for y in c.members() {
            out.insert(self.up(y));
        }
        out
    }
}

/// `{X : X ∪ z ∈ c}`.
pub fn lift(c: &Config, z: SubsetMask) -> Config {
    let mut out = Config::empty(c.universe());
    for x in c.universe().full_mask().subsets() {
        if c.contains(x.union(z)) {
            out.insert(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_zeta(f: &IntFunc) -> IntFunc {
        let n = f.universe().len();
        let full = SubsetMask::full(n);
        let mut g = IntFunc::zero(f.universe());
        for x in full.subsets() {
            let s: i32 = full.subsets().filter(|y| x.is_subset(*y)).map(|y| f.get(y)).sum();
            g.set(x, s);
        }
        g
    }

    #[test]
    fn subsets_enumerates_all() {
        let m = SubsetMask(0b1011);
        let v: Vec<u32> = m.subsets().map(|s| s.0).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 8, 9, 10, 11]);
    }

    #[test]
    fn dunion_and_scomp_mask() {
        let a = SubsetMask(0b0011);
        let b = SubsetMask(0b0100);
        assert_eq!(dunion(&a, &b), Some(SubsetMask(0b0111)));
        assert_eq!(dunion(&a, &a), None);
        assert_eq!(scomp(&SubsetMask(0b0111), &b), Some(a));
        assert_eq!(scomp(&a, &b), None);
        assert_eq!(a.dunion(&SubsetMask(0b0110)), Err(OpFailure::Overlap(1)));
        assert_eq!(a.scomp(&SubsetMask(0b1100)), Err(OpFailure::NotSubset(2)));
    }

    #[test]
    fn zeta_of_full_indicator() {
        let u = Universe::numbered(3).unwrap();
        let z = superset_zeta(&Config::full(&u).indicator()).unwrap();
        for x in SubsetMask::full(3).subsets() {
            assert_eq!(z.get(x), 1 << (3 - x.len()));
        }
    }

    #[test]
    fn zeta_matches_naive() {
        let u = Universe::numbered(4).unwrap();
        let vals: Vec<i32> = (0..16).map(|i| (i * 7 % 5) - 2).collect();
        let f = IntFunc::from_values(&u, vals).unwrap();
        assert_eq!(superset_zeta(&f).unwrap(), naive_zeta(&f));
        assert_eq!(superset_mobius(&superset_zeta(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn zeta_overflow_is_reported() {
        let u = Universe::numbered(1).unwrap();
        let f = IntFunc::from_values(&u, vec![i32::MAX, 1]).unwrap();
        assert_eq!(superset_zeta(&f), Err(SubsetError::Overflow));
    }

    #[test]
    fn euler_examples() {
        let u = Universe::numbered(2).unwrap();
        assert_eq!(Config::full(&u).euler(), 0);
        assert_eq!(Config::empty(&u).euler(), 0);
        let c = Config::from_masks(&u, [SubsetMask(0), SubsetMask(1), SubsetMask(2)]).unwrap();
        assert_eq!(c.euler(), -1);
    }

    #[test]
    fn shortest_path_prefers_small_masks() {
        let u = Universe::numbered(2).unwrap();
        let p = Config::full(&u).shortest_path(SubsetMask(0), SubsetMask(3)).unwrap();
        assert_eq!(p, vec![SubsetMask(0), SubsetMask(1), SubsetMask(3)]);
    }

    #[test]
    fn relative_round_trip() {
        let u = Universe::numbered(4).unwrap();
        let r = Relative::new(&u, SubsetMask(0b0100));
        assert_eq!(r.inner.labels(), &["0", "1", "3"]);
        for y in SubsetMask::full(3).subsets() {
            assert_eq!(r.down(r.up(y)), y);
            assert!(r.z.is_subset(r.up(y)));
        }
    }

    #[test]
    fn lift_of_upset_is_everything() {
        let u = Universe::numbered(3).unwrap();
        let z = SubsetMask(0b001);
        let c = Config::principal_up(&u, z);
        assert_eq!(lift(&c, z), Config::full(&u));
    }

    #[test]
    fn parse_subset_forms() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        assert_eq!(u.parse_subset("{a,c}").unwrap(), SubsetMask(0b101));
        assert_eq!(u.parse_subset("b").unwrap(), SubsetMask(0b010));
        assert_eq!(u.parse_subset("{}").unwrap(), SubsetMask(0));
        assert!(u.parse_subset("{x}").is_err());
        assert_eq!(u.render(SubsetMask(0b101)), "{a,c}");
    }
}
