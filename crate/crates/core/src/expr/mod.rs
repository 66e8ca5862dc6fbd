//! Witness trees of the dot algebra: disjoint unions and set complements
//! over a catalog of base sets.

mod laws;
mod sexp;

pub use laws::{check_multiplicity_laws, LawContext, LawError, Mismatch, MultiplicityReport, PrincipalDownsets};
pub use sexp::{parse, serialize, ParseError};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::escape;
use crate::subset::{AtomSet, OpFailure};

/// A tree of the dot algebra. `Leaf(i)` refers to entry `i` of a
/// [`BaseCatalog`]; `Empty` is the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WitnessTree {
    Leaf(usize),
    Empty,
    /// k-ary disjoint union, k >= 1.
    DUnion(Vec<WitnessTree>),
    /// `left ∖̇ right`.
    SComp(Box<WitnessTree>, Box<WitnessTree>),
}

/// A leaf of a tree: a catalog entry or the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeafRef {
    Empty,
    Base(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DotError {
    #[error("invalid node at path {path:?}: {cause}")]
    InvalidNode { path: Vec<usize>, cause: NodeFailure },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl DotError {
    pub fn name(&self) -> &'static str {
        match self {
            DotError::InvalidNode { .. } => "InvalidNodeError",
            DotError::Parse(_) => "ParseError",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NodeFailure {
    #[error("operands of the disjoint union share atom {0}")]
    Overlap(String),
    #[error("subtrahend contains atom {0}, which the minuend lacks")]
    NotSubset(String),
    #[error("leaf L{0} is not in the catalog")]
    UnknownLeaf(usize),
    #[error("operands come from different universes")]
    Mismatch,
    #[error("disjoint union without children")]
    EmptyUnion,
}

/// Named base sets, indexed by leaf number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCatalog<T: AtomSet> {
    empty: T,
    entries: Vec<T>,
    names: Vec<String>,
}

impl<T: AtomSet> BaseCatalog<T> {
    /// `empty` fixes the ambient space for the `E` leaf.
    pub fn new(empty: T, entries: Vec<T>) -> BaseCatalog<T> {
        let names = entries.iter().map(|e| e.render()).collect();
        BaseCatalog { empty, entries, names }
    }

    pub fn with_names(empty: T, entries: Vec<T>, names: Vec<String>) -> BaseCatalog<T> {
        assert_eq!(entries.len(), names.len());
        BaseCatalog { empty, entries, names }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Option<&T> {
        self.entries.get(i)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, leaf: LeafRef) -> String {
        match leaf {
            LeafRef::Empty => "∅".to_string(),
            LeafRef::Base(i) => self.names.get(i).cloned().unwrap_or_else(|| format!("L{i}")),
        }
    }

    pub fn empty(&self) -> &T {
        &self.empty
    }

    pub fn position(&self, s: &T) -> Option<usize> {
        self.entries.iter().position(|e| e == s)
    }

    fn atom_name(&self, a: usize) -> String {
        self.empty.with_atoms(&[a]).render()
    }
}

impl WitnessTree {
    pub fn leaf(i: usize) -> WitnessTree {
        WitnessTree::Leaf(i)
    }

    pub fn dunion(children: Vec<WitnessTree>) -> WitnessTree {
        WitnessTree::DUnion(children)
    }

    pub fn scomp(l: WitnessTree, r: WitnessTree) -> WitnessTree {
        WitnessTree::SComp(Box::new(l), Box::new(r))
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            WitnessTree::Leaf(_) | WitnessTree::Empty => 1,
            WitnessTree::DUnion(cs) => 1 + cs.iter().map(WitnessTree::size).sum::<usize>(),
            WitnessTree::SComp(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn leaves(&self) -> Vec<LeafRef> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |l, _| out.push(l), 0);
        out
    }

    fn visit_leaves(&self, f: &mut impl FnMut(LeafRef, u32), polarity: u32) {
        match self {
            WitnessTree::Leaf(i) => f(LeafRef::Base(*i), polarity),
            WitnessTree::Empty => f(LeafRef::Empty, polarity),
            WitnessTree::DUnion(cs) => cs.iter().for_each(|c| c.visit_leaves(f, polarity)),
            WitnessTree::SComp(l, r) => {
                l.visit_leaves(f, polarity);
                r.visit_leaves(f, polarity + 1);
            }
        }
    }

    /// Every leaf with its polarity: the number of right edges of set
    /// complements on the path from the root.
    pub fn polarities(&self) -> Vec<(LeafRef, u32)> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |l, p| out.push((l, p)), 0);
        out
    }

    /// Signed count of each leaf: `+1` per even-polarity occurrence, `-1`
    /// per odd one. Every leaf occurring in the tree has an entry.
    pub fn multiplicities(&self) -> BTreeMap<LeafRef, i64> {
        let mut m = BTreeMap::new();
        self.visit_leaves(
            &mut |l, p| *m.entry(l).or_insert(0) += if p % 2 == 0 { 1 } else { -1 },
            0,
        );
        m
    }

    /// Every right child of a set complement, and every non-first child of
    /// a disjoint union, is a leaf.
    pub fn is_left_linear(&self) -> bool {
        match self {
            WitnessTree::Leaf(_) | WitnessTree::Empty => true,
            WitnessTree::DUnion(cs) => {
                cs.first().is_none_or(WitnessTree::is_left_linear) && cs.iter().skip(1).all(WitnessTree::is_leaf)
            }
            WitnessTree::SComp(l, r) => r.is_leaf() && l.is_left_linear(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, WitnessTree::Leaf(_) | WitnessTree::Empty)
    }

    /// Renumbers base leaves.
    pub fn map_leaves(&self, f: &impl Fn(usize) -> usize) -> WitnessTree {
        self.substitute(&|i| WitnessTree::Leaf(f(i)))
    }

    /// Replaces every base leaf by a subtree.
    pub fn substitute(&self, f: &impl Fn(usize) -> WitnessTree) -> WitnessTree {
        match self {
            WitnessTree::Leaf(i) => f(*i),
            WitnessTree::Empty => WitnessTree::Empty,
            WitnessTree::DUnion(cs) => WitnessTree::DUnion(cs.iter().map(|c| c.substitute(f)).collect()),
            WitnessTree::SComp(l, r) => WitnessTree::scomp(l.substitute(f), r.substitute(f)),
        }
    }

    /// The left-linear tree applying `steps` in order, starting from the
    /// empty set. Consecutive additions share one disjoint union.
    pub fn from_steps(steps: &[(Sign, WitnessTree)]) -> WitnessTree {
        let mut acc: Option<WitnessTree> = None;
        for (sign, t) in steps {
            acc = Some(match (acc, sign) {
                (None, Sign::Plus) => t.clone(),
                (None, Sign::Minus) => WitnessTree::scomp(WitnessTree::Empty, t.clone()),
                (Some(WitnessTree::DUnion(mut cs)), Sign::Plus) => {
                    cs.push(t.clone());
                    WitnessTree::DUnion(cs)
                }
                (Some(a), Sign::Plus) => WitnessTree::DUnion(vec![a, t.clone()]),
                (Some(a), Sign::Minus) => WitnessTree::scomp(a, t.clone()),
            });
        }
        acc.unwrap_or(WitnessTree::Empty)
    }

    /// Signed step sequence of a left-linear tree.
    pub fn to_steps(&self) -> Option<Vec<(Sign, LeafRef)>> {
        if !self.is_left_linear() {
            return None;
        }
        fn go(t: &WitnessTree, out: &mut Vec<(Sign, LeafRef)>) {
            match t {
                WitnessTree::Leaf(i) => out.push((Sign::Plus, LeafRef::Base(*i))),
                WitnessTree::Empty => {}
                WitnessTree::DUnion(cs) => {
                    go(&cs[0], out);
                    for c in &cs[1..] {
                        if let WitnessTree::Leaf(i) = c {
                            out.push((Sign::Plus, LeafRef::Base(*i)));
                        }
                    }
                }
                WitnessTree::SComp(l, r) => {
                    go(l, out);
                    if let WitnessTree::Leaf(i) = **r {
                        out.push((Sign::Minus, LeafRef::Base(i)));
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        Some(out)
    }
}

fn failure<T: AtomSet>(base: &BaseCatalog<T>, f: OpFailure) -> NodeFailure {
    match f {
        OpFailure::Overlap(a) => NodeFailure::Overlap(base.atom_name(a)),
        OpFailure::NotSubset(a) => NodeFailure::NotSubset(base.atom_name(a)),
        OpFailure::Mismatch => NodeFailure::Mismatch,
    }
}

/// Value of the tree, or the first node (in evaluation order) whose
/// operation is undefined.
pub fn evaluate<T: AtomSet>(t: &WitnessTree, base: &BaseCatalog<T>) -> Result<T, DotError> {
    let mut path = Vec::new();
    eval_at(t, base, &mut path, &mut |_, _| {})
}

fn eval_at<T: AtomSet>(
    t: &WitnessTree,
    base: &BaseCatalog<T>,
    path: &mut Vec<usize>,
    record: &mut impl FnMut(&[usize], &T),
) -> Result<T, DotError> {
    let fail = |path: &Vec<usize>, cause| DotError::InvalidNode {
        path: path.clone(),
        cause,
    };
    let v = match t {
        WitnessTree::Leaf(i) => base
            .entries
            .get(*i)
            .cloned()
            .ok_or_else(|| fail(path, NodeFailure::UnknownLeaf(*i)))?,
        WitnessTree::Empty => base.empty.clone(),
        WitnessTree::DUnion(cs) => {
            if cs.is_empty() {
                return Err(fail(path, NodeFailure::EmptyUnion));
            }
            let mut acc: Option<T> = None;
            for (k, c) in cs.iter().enumerate() {
                path.push(k);
                let v = eval_at(c, base, path, record)?;
                path.pop();
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.dunion(&v).map_err(|e| fail(path, failure(base, e)))?,
                });
            }
            acc.unwrap()
        }
        WitnessTree::SComp(l, r) => {
            path.push(0);
            let a = eval_at(l, base, path, record)?;
            path.pop();
            path.push(1);
            let b = eval_at(r, base, path, record)?;
            path.pop();
            a.scomp(&b).map_err(|e| fail(path, failure(base, e)))?
        }
    };
    record(path, &v);
    Ok(v)
}

/// Evaluated value of every node, keyed by path.
pub fn evaluate_all<T: AtomSet>(t: &WitnessTree, base: &BaseCatalog<T>) -> Result<BTreeMap<Vec<usize>, T>, DotError> {
    let mut out = BTreeMap::new();
    let mut path = Vec::new();
    eval_at(t, base, &mut path, &mut |p, v| {
        out.insert(p.to_vec(), v.clone());
    })?;
    Ok(out)
}

/// Graphviz rendering with each node annotated by its value.
pub fn tree_to_dot<T: AtomSet>(t: &WitnessTree, base: &BaseCatalog<T>) -> Result<String, DotError> {
    let values = evaluate_all(t, base)?;
    let mut s = String::from("digraph tree {\n  node [shape=plaintext];\n");
    let mut counter = 0usize;
    fn go<T: AtomSet>(
        t: &WitnessTree,
        base: &BaseCatalog<T>,
        values: &BTreeMap<Vec<usize>, T>,
        path: &mut Vec<usize>,
        counter: &mut usize,
        s: &mut String,
    ) -> usize {
        let id = *counter;
        *counter += 1;
        let label = match t {
            WitnessTree::Leaf(i) => base.name(LeafRef::Base(*i)),
            WitnessTree::Empty => "∅".to_string(),
            WitnessTree::DUnion(_) => "⊔".to_string(),
            WitnessTree::SComp(..) => "∖".to_string(),
        };
        let value = values[path.as_slice()].render();
        let _ = writeln!(
            s,
            "  t{id} [label=\"{}\", xlabel=\"{}\", fontcolor=black];",
            escape(&label),
            escape(&value)
        );
        let children: Vec<&WitnessTree> = match t {
            WitnessTree::DUnion(cs) => cs.iter().collect(),
            WitnessTree::SComp(l, r) => vec![l, r],
            _ => vec![],
        };
        for (k, c) in children.into_iter().enumerate() {
            path.push(k);
            let cid = go(c, base, values, path, counter, s);
            path.pop();
            let _ = writeln!(s, "  t{id} -> t{cid};");
        }
        id
    }
    go(t, base, &values, &mut Vec::new(), &mut counter, &mut s);
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::SubsetMask;

    fn cat(masks: &[u32]) -> BaseCatalog<SubsetMask> {
        BaseCatalog::new(SubsetMask::EMPTY, masks.iter().map(|&m| SubsetMask(m)).collect())
    }

    #[test]
    fn self_complement_has_zero_multiplicity() {
        let t = WitnessTree::scomp(WitnessTree::Leaf(0), WitnessTree::Leaf(0));
        let m = t.multiplicities();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&LeafRef::Base(0)], 0);
        assert_eq!(evaluate(&t, &cat(&[0b11])).unwrap(), SubsetMask::EMPTY);
    }

    #[test]
    fn overlap_reports_the_union_node() {
        let t = WitnessTree::dunion(vec![
            WitnessTree::Leaf(0),
            WitnessTree::scomp(WitnessTree::Leaf(1), WitnessTree::Leaf(2)),
        ]);
        // {0,1} ⊔ ({1,2} ∖ {2}) overlaps in 1
        let err = evaluate(&t, &cat(&[0b011, 0b110, 0b100])).unwrap_err();
        assert_eq!(
            err,
            DotError::InvalidNode {
                path: vec![],
                cause: NodeFailure::Overlap("{1}".into())
            }
        );
        let bad = WitnessTree::scomp(WitnessTree::Leaf(0), WitnessTree::Leaf(1));
        let err = evaluate(&WitnessTree::dunion(vec![WitnessTree::Empty, bad]), &cat(&[0b01, 0b10])).unwrap_err();
        assert!(matches!(err, DotError::InvalidNode { path, .. } if path == vec![1]));
    }

    #[test]
    fn left_linearity() {
        let l = |i| WitnessTree::Leaf(i);
        assert!(WitnessTree::dunion(vec![WitnessTree::scomp(l(0), l(1)), l(2)]).is_left_linear());
        assert!(!WitnessTree::dunion(vec![l(2), WitnessTree::scomp(l(0), l(1))]).is_left_linear());
        assert!(!WitnessTree::scomp(l(0), WitnessTree::dunion(vec![l(1), l(2)])).is_left_linear());
    }

    #[test]
    fn steps_round_trip() {
        let l = |i| WitnessTree::Leaf(i);
        let steps = vec![
            (Sign::Plus, l(0)),
            (Sign::Minus, l(1)),
            (Sign::Plus, l(2)),
            (Sign::Plus, l(3)),
        ];
        let t = WitnessTree::from_steps(&steps);
        assert_eq!(t, WitnessTree::dunion(vec![WitnessTree::scomp(l(0), l(1)), l(2), l(3)]));
        let back = t.to_steps().unwrap();
        assert_eq!(back.len(), 4);
        assert_eq!(back[1], (Sign::Minus, LeafRef::Base(1)));
    }

    #[test]
    fn dot_output_mentions_values() {
        let t = WitnessTree::scomp(WitnessTree::Leaf(0), WitnessTree::Leaf(1));
        let d = tree_to_dot(&t, &cat(&[0b11, 0b01])).unwrap();
        assert!(d.contains("xlabel=\"{1}\""));
        assert!(d.starts_with("digraph tree"));
    }
}
