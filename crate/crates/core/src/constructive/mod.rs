//! Explicit witness constructions: every configuration from its principal
//! downsets, arbitrary subsets of a tight lattice top, adjacent-pair
//! rewriting, and downsets that avoid one zero.

mod avoid;
mod nti;
mod rewrite;

pub use avoid::{avoid_zero, lift_tree, pair_to_downsets};
pub use nti::nti_express;
pub use rewrite::{erase, eul_equiv_steps, fetch, teleport, AdjacentPair, RewriteTrace};

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{evaluate, BaseCatalog, DotError, WitnessTree};
use crate::subset::{Config, SubsetMask, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("some node has more than one private element")]
    NotTight,
    #[error("target is not a subset of the top")]
    TargetOutsideTop,
    #[error("bad path: {0}")]
    BadPath(String),
    #[error("configurations have Euler characteristics {0} and {1}")]
    EulerMismatch(i64, i64),
    #[error("no path between the chosen members")]
    Disconnected,
    #[error("all members have the same parity")]
    AllSameParity,
    #[error("configuration is not contained in the ambient configuration")]
    NotContained,
    #[error("configuration is not a downset")]
    NotADownset,
    #[error("{0} is not a non-trivial zero of the downset")]
    NotAZero(String),
    #[error("leaf {0} is not of the form I(X) ∩ F(Z)")]
    LeafForm(String),
    #[error("invalid step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },
    #[error("construction failed validation: {0}")]
    Validation(String),
    #[error(transparent)]
    Tree(#[from] DotError),
}

impl ConstructError {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructError::NotTight => "NotTightError",
            ConstructError::TargetOutsideTop => "TargetOutsideTopError",
            ConstructError::BadPath(_) => "BadPathError",
            ConstructError::EulerMismatch(..) => "EulerMismatchError",
            ConstructError::Disconnected => "DisconnectedError",
            ConstructError::AllSameParity => "AllSameParityError",
            ConstructError::NotContained => "NotContainedError",
            ConstructError::NotADownset => "NotADownsetError",
            ConstructError::NotAZero(_) => "NotAZeroError",
            ConstructError::LeafForm(_) => "LeafFormError",
            ConstructError::InvalidStep { .. } => "InvalidStepError",
            ConstructError::Validation(_) => "ValidationError",
            ConstructError::Tree(e) => e.name(),
        }
    }
}

/// A tree whose leaves are principal downsets `I(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetWitness {
    pub catalog: BaseCatalog<Config>,
    /// `generators[k]` is the `X` with `catalog[k] = I(X)`.
    pub generators: Vec<SubsetMask>,
    pub tree: WitnessTree,
}

impl DownsetWitness {
    pub fn evaluate(&self) -> Result<Config, DotError> {
        evaluate(&self.tree, &self.catalog)
    }

    /// Generators of the leaves actually used.
    pub fn used_generators(&self) -> BTreeSet<SubsetMask> {
        self.tree
            .leaves()
            .into_iter()
            .filter_map(|l| match l {
                crate::expr::LeafRef::Base(k) => Some(self.generators[k]),
                crate::expr::LeafRef::Empty => None,
            })
            .collect()
    }
}

pub(crate) fn downset_name(u: &Universe, x: SubsetMask) -> String {
    format!("I{}", u.render(x))
}

/// Turns a tree whose leaves are masks into a [`DownsetWitness`].
pub(crate) fn compact(u: &Arc<Universe>, masked: &WitnessTree) -> DownsetWitness {
    let mut gens: Vec<SubsetMask> = masked
        .leaves()
        .into_iter()
        .filter_map(|l| match l {
            crate::expr::LeafRef::Base(m) => Some(SubsetMask(m as u32)),
            crate::expr::LeafRef::Empty => None,
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    gens.sort_by_key(|m| (m.len(), m.0));
    let pos: HashMap<usize, usize> = gens.iter().enumerate().map(|(k, m)| (m.0 as usize, k)).collect();
    let tree = masked.map_leaves(&|m| pos[&m]);
    let entries = gens.iter().map(|&x| Config::principal(u, x)).collect();
    let names = gens.iter().map(|&x| downset_name(u, x)).collect();
    DownsetWitness {
        catalog: BaseCatalog::with_names(Config::empty(u), entries, names),
        generators: gens,
        tree,
    }
}

fn push_union(acc: WitnessTree, t: WitnessTree) -> WitnessTree {
    match acc {
        WitnessTree::Empty => t,
        WitnessTree::DUnion(mut cs) => {
            cs.push(t);
            WitnessTree::DUnion(cs)
        }
        a => WitnessTree::DUnion(vec![a, t]),
    }
}

/// Builds any configuration from the principal downsets of its downward
/// closure: the maximal member `X` with the lowest mask is peeled off as
/// `rest ⊔ (I(X) ∖̇ (I(X) ∖ {X}))`.
pub fn allreach(c: &Config) -> DownsetWitness {
    let mut memo = HashMap::new();
    let t = allreach_masked(c, &mut memo);
    compact(c.universe(), &t)
}

pub(crate) fn allreach_masked(c: &Config, memo: &mut HashMap<Config, WitnessTree>) -> WitnessTree {
    if c.count() == 0 {
        return WitnessTree::Empty;
    }
    if let Some(t) = memo.get(c) {
        return t.clone();
    }
    let x = c.maximal()[0];
    let mut rest = c.clone();
    rest.remove(x);
    let mut below = Config::principal(c.universe(), x);
    below.remove(x);
    let leaf = WitnessTree::Leaf(x.0 as usize);
    let peeled = if below.count() == 0 {
        leaf
    } else {
        WitnessTree::scomp(leaf, allreach_masked(&below, memo))
    };
    let t = push_union(allreach_masked(&rest, memo), peeled);
    memo.insert(c.clone(), t.clone());
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{check_multiplicity_laws, PrincipalDownsets};

    #[test]
    fn allreach_singleton() {
        let u = Universe::numbered(2).unwrap();
        let c = Config::from_masks(&u, [SubsetMask(0b11)]).unwrap();
        let w = allreach(&c);
        assert_eq!(w.evaluate().unwrap(), c);
        assert!(matches!(w.tree, WitnessTree::SComp(..)));
    }

    #[test]
    fn allreach_every_config_of_b3() {
        let u = Universe::numbered(3).unwrap();
        for bits in 0u32..256 {
            let c = Config::from_masks(&u, (0..8).filter(|i| bits >> i & 1 == 1).map(SubsetMask)).unwrap();
            let w = allreach(&c);
            assert_eq!(w.evaluate().unwrap(), c);
            let closure = c.downset_closure();
            assert!(w.generators.iter().all(|&g| closure.contains(g)));
            if c.is_downset() {
                let r = check_multiplicity_laws(&w.tree, &w.catalog, &PrincipalDownsets(&c)).unwrap();
                assert!(r.all_equal(), "{r:?}");
            }
        }
    }
}
