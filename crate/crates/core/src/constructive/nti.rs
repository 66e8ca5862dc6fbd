use std::collections::HashMap;

use super::ConstructError;
use crate::expr::{BaseCatalog, Sign, WitnessTree};
use crate::lattice::IntersectionLattice;
use crate::mobius::nti;
use crate::subset::SubsetMask;

/// A tree over the nodes below the top (catalog = those nodes in index
/// order) that evaluates to `target`.
///
/// Works whenever every node has at most one private element. Each
/// element `x` with `min(x) = U` is extracted as `U ∖̇ (U ∖ {x})`. The
/// left-linear variant instead moves between subsets one node at a time.
pub fn nti_express(
    l: &IntersectionLattice<SubsetMask>,
    target: SubsetMask,
    left_linear: bool,
) -> Result<(BaseCatalog<SubsetMask>, WitnessTree), ConstructError> {
    if !l.is_weakly_tight() {
        return Err(ConstructError::NotTight);
    }
    if !target.is_subset(*l.top_set()) {
        return Err(ConstructError::TargetOutsideTop);
    }
    let nodes = nti(l);
    let catalog = BaseCatalog::new(SubsetMask::EMPTY, nodes.iter().map(|&i| *l.node(i)).collect());
    let private: Vec<Option<usize>> = nodes.iter().map(|&i| l.private_atoms(i).first().copied()).collect();
    let tree = if left_linear {
        let mut memo = HashMap::new();
        let steps = moves(l, &private, nodes.len(), SubsetMask::EMPTY, target, &mut memo);
        let steps: Vec<(Sign, WitnessTree)> = steps.into_iter().map(|(s, k)| (s, WitnessTree::Leaf(k))).collect();
        WitnessTree::from_steps(&steps)
    } else {
        let mut memo = HashMap::new();
        subset_tree(l, target, &mut memo)
    };
    Ok((catalog, tree))
}

fn singleton(l: &IntersectionLattice<SubsetMask>, x: usize, memo: &mut HashMap<usize, WitnessTree>) -> WitnessTree {
    if let Some(t) = memo.get(&x) {
        return t.clone();
    }
    let u = l.min_of(x).expect("atom of the top");
    let rest = l.node(u).without(x);
    let t = if rest.is_empty() {
        WitnessTree::Leaf(u)
    } else {
        WitnessTree::scomp(WitnessTree::Leaf(u), subset_tree(l, rest, memo))
    };
    memo.insert(x, t.clone());
    t
}

fn subset_tree(
    l: &IntersectionLattice<SubsetMask>,
    y: SubsetMask,
    memo: &mut HashMap<usize, WitnessTree>,
) -> WitnessTree {
    let parts: Vec<WitnessTree> = y.iter().map(|x| singleton(l, x, memo)).collect();
    match parts.len() {
        0 => WitnessTree::Empty,
        1 => parts.into_iter().next().unwrap(),
        _ => WitnessTree::DUnion(parts),
    }
}

type Memo = HashMap<(usize, SubsetMask, SubsetMask), Vec<(Sign, usize)>>;

/// Steps turning `s` into `t` using only the first `k` nodes, which form a
/// downset because nodes are sorted by cardinality.
fn moves(
    l: &IntersectionLattice<SubsetMask>,
    private: &[Option<usize>],
    k: usize,
    s: SubsetMask,
    t: SubsetMask,
    memo: &mut Memo,
) -> Vec<(Sign, usize)> {
    if s == t || k == 0 {
        return Vec::new();
    }
    if let Some(v) = memo.get(&(k, s, t)) {
        return v.clone();
    }
    let node = k - 1;
    let u = *l.node(node);
    let out = match private[node] {
        None => moves(l, private, k - 1, s, t, memo),
        Some(x) => match (s.contains(x), t.contains(x)) {
            (false, false) => moves(l, private, k - 1, s, t, memo),
            (true, true) => moves(l, private, k - 1, s.without(x), t.without(x), memo),
            (false, true) => {
                let mid = t.difference(u);
                let mut v = moves(l, private, k - 1, s, mid, memo);
                v.push((Sign::Plus, node));
                v.extend(moves(l, private, k - 1, mid.union(u).without(x), t.without(x), memo));
                v
            }
            (true, false) => {
                let mid = s.difference(u);
                let mut v = moves(l, private, k - 1, s.without(x), mid.union(u).without(x), memo);
                v.push((Sign::Minus, node));
                v.extend(moves(l, private, k - 1, mid, t, memo));
                v
            }
        },
    };
    memo.insert((k, s, t), out.clone());
    out
}
