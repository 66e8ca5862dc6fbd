//! Lifting trees out of an upset, expressing adjacent pairs by principal
//! downsets, and building a downset without the principal downset of one
//! of its zeros.

use std::collections::HashMap;
use std::sync::Arc;

use super::{allreach_masked, compact, eul_equiv_steps, AdjacentPair, ConstructError, DownsetWitness};
use crate::expr::{evaluate, BaseCatalog, WitnessTree};
use crate::mobius::generalized_mobius;
use crate::subset::{lift, AtomSet, Config, Relative, SubsetMask, Universe};

/// Reinterprets a tree whose leaves are `I(X) ∩ F(z)` as one over `I(X)`.
/// The lifted tree evaluates to `lift(value, z)`.
pub fn lift_tree(
    t: &WitnessTree,
    base: &BaseCatalog<Config>,
    z: SubsetMask,
) -> Result<(BaseCatalog<Config>, Vec<SubsetMask>), ConstructError> {
    let u = base.empty().universe().clone();
    let up = Config::principal_up(&u, z);
    let mut gens = Vec::new();
    let mut entries = Vec::new();
    let mut names = Vec::new();
    for e in base.entries() {
        let max = e.maximal();
        if max.len() != 1 || !z.is_subset(max[0]) || *e != Config::principal(&u, max[0]).intersection(&up) {
            return Err(ConstructError::LeafForm(e.render()));
        }
        gens.push(max[0]);
        entries.push(Config::principal(&u, max[0]));
        names.push(super::downset_name(&u, max[0]));
    }
    let lifted = BaseCatalog::with_names(Config::empty(&u), entries, names);
    let before = evaluate(t, base)?;
    let after = evaluate(t, &lifted)?;
    if after != lift(&before, z) {
        return Err(ConstructError::Validation(
            "lifted tree does not evaluate to the lift".into(),
        ));
    }
    Ok((lifted, gens))
}

/// A tree for the pair `{X, X ∖ {x}}` over `I(Y)` with `∅ ⊊ Y ⊆ X`:
/// `I(X) ∖̇ lift(T')`, where `T'` builds `{Y : x ∈ Y ⊊ X}` inside the
/// upset of `{x}`.
pub fn pair_to_downsets(u: &Arc<Universe>, p: AdjacentPair) -> Result<DownsetWitness, ConstructError> {
    let masked = pair_masked(u, p)?;
    let w = compact(u, &masked);
    let expect = p.to_config(u);
    if w.evaluate()? != expect {
        return Err(ConstructError::Validation(
            "pair tree does not evaluate to the pair".into(),
        ));
    }
    Ok(w)
}

fn pair_masked(u: &Arc<Universe>, p: AdjacentPair) -> Result<WitnessTree, ConstructError> {
    let x = SubsetMask::singleton(p.element);
    let top = WitnessTree::Leaf(p.upper.0 as usize);
    if p.upper == x {
        return Ok(top);
    }
    // {Y : x ∈ Y ⊊ X}, built in the upset of {x} and lifted
    let rel = Relative::new(u, x);
    let mut inner = Config::principal(&rel.inner, rel.down(p.upper));
    inner.remove(rel.down(p.upper));
    let rel_tree = allreach_masked(&inner, &mut HashMap::new());
    let rel_tree = rel_tree.map_leaves(&|m| rel.up(SubsetMask(m as u32)).0 as usize);
    let (catalog, tree) = relative_catalog(u, &rel_tree, x);
    let (_, gens) = lift_tree(&tree, &catalog, x)?;
    let lifted = tree.map_leaves(&|k| gens[k].0 as usize);
    Ok(WitnessTree::scomp(top, lifted))
}

/// Catalog of `I(W) ∩ F(z)` for the leaf masks `W` of a masked tree.
fn relative_catalog(u: &Arc<Universe>, masked: &WitnessTree, z: SubsetMask) -> (BaseCatalog<Config>, WitnessTree) {
    let w = compact(u, masked);
    let up = Config::principal_up(u, z);
    let entries = w.catalog.entries().iter().map(|e| e.intersection(&up)).collect();
    let names = w
        .catalog
        .names()
        .iter()
        .map(|n| format!("{n}∩F{}", u.render(z)))
        .collect();
    (BaseCatalog::with_names(Config::empty(u), entries, names), w.tree)
}

/// A tree over `{I(X) : X ∈ i, X ≠ z}` evaluating to the downset `i`,
/// where `z` is a member with `μ̂(z) = 0`.
pub fn avoid_zero(i: &Config, z: SubsetMask) -> Result<DownsetWitness, ConstructError> {
    let u = i.universe().clone();
    if !i.is_downset() {
        return Err(ConstructError::NotADownset);
    }
    let mu = generalized_mobius(i).map_err(|e| ConstructError::Validation(e.to_string()))?;
    if !i.contains(z) || mu.get(z) != 0 {
        return Err(ConstructError::NotAZero(u.render(z)));
    }
    let up = Config::principal_up(&u, z);
    let g = i.intersection(&up);
    // pair steps from the empty configuration up to g, all inside g
    let down = eul_equiv_steps(&g, &g, &Config::empty(&u))?;
    let build = down.reversed()?;
    let rel = Relative::new(&u, z);
    let mut steps = Vec::new();
    for &(sign, p) in &build.steps {
        let inner = AdjacentPair::of(rel.down(p.lower()), rel.down(p.upper)).expect("pair inside the upset");
        let t = pair_masked(&rel.inner, inner)?;
        steps.push((sign, t.map_leaves(&|m| rel.up(SubsetMask(m as u32)).0 as usize)));
    }
    let rel_masked = WitnessTree::from_steps(&steps);
    let (catalog, tree) = relative_catalog(&u, &rel_masked, z);
    if evaluate(&tree, &catalog)? != g {
        return Err(ConstructError::Validation(
            "relative tree does not evaluate to I ∩ F(z)".into(),
        ));
    }
    let (_, gens) = lift_tree(&tree, &catalog, z)?;
    let lifted = tree.map_leaves(&|k| gens[k].0 as usize);
    let lifted_value = lift(&g, z);
    let c1 = lifted_value.difference(&g);
    let c2 = i.difference(&g);
    let mut memo = HashMap::new();
    let mut t = lifted;
    if c1.count() > 0 {
        t = WitnessTree::scomp(t, allreach_masked(&c1, &mut memo));
    }
    if c2.count() > 0 {
        t = WitnessTree::DUnion(vec![t, allreach_masked(&c2, &mut memo)]);
    }
    let w = compact(&u, &t);
    if w.evaluate()? != *i {
        return Err(ConstructError::Validation(
            "tree does not evaluate to the downset".into(),
        ));
    }
    if w.generators.iter().any(|&x| x == z || !i.contains(x)) {
        return Err(ConstructError::Validation("a leaf lies outside I ∖ {z}".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::ntz;

    #[test]
    fn singleton_pair_is_one_leaf() {
        let u = Universe::numbered(3).unwrap();
        let p = AdjacentPair::of(SubsetMask(0), SubsetMask(0b010)).unwrap();
        let w = pair_to_downsets(&u, p).unwrap();
        assert_eq!(w.tree, WitnessTree::Leaf(0));
        assert_eq!(w.generators, vec![SubsetMask(0b010)]);
    }

    #[test]
    fn every_pair_of_b3() {
        let u = Universe::numbered(3).unwrap();
        for x in SubsetMask::full(3).subsets() {
            for e in x.iter() {
                let p = AdjacentPair { upper: x, element: e };
                let w = pair_to_downsets(&u, p).unwrap();
                assert_eq!(w.evaluate().unwrap(), p.to_config(&u));
                assert!(w.generators.iter().all(|&g| !g.is_empty() && g.is_subset(x)));
            }
        }
    }

    #[test]
    fn lift_rejects_plain_downsets() {
        let u = Universe::numbered(2).unwrap();
        let base = BaseCatalog::new(Config::empty(&u), vec![Config::principal(&u, SubsetMask(3))]);
        let err = lift_tree(&WitnessTree::Leaf(0), &base, SubsetMask(1)).unwrap_err();
        assert!(matches!(err, ConstructError::LeafForm(_)));
    }

    #[test]
    fn avoid_zero_on_b2() {
        let u = Universe::numbered(2).unwrap();
        let i = Config::full(&u);
        // μ̂(∅) = 0 for the full lattice
        let w = avoid_zero(&i, SubsetMask(0)).unwrap();
        assert_eq!(w.evaluate().unwrap(), i);
        assert!(!w.generators.contains(&SubsetMask(0)));
    }

    #[test]
    fn avoid_every_zero_of_small_downsets() {
        let u = Universe::numbered(3).unwrap();
        for bits in 0u32..256 {
            let c = Config::from_masks(&u, (0..8).filter(|i| bits >> i & 1 == 1).map(SubsetMask)).unwrap();
            if !c.is_downset() {
                continue;
            }
            for z in ntz(&c).unwrap() {
                let w = avoid_zero(&c, z).unwrap();
                assert_eq!(w.evaluate().unwrap(), c);
                assert!(!w.generators.contains(&z));
            }
        }
    }

    #[test]
    fn rejects_nonzero() {
        let u = Universe::numbered(2).unwrap();
        let i = Config::principal(&u, SubsetMask(3));
        assert!(matches!(
            avoid_zero(&i, SubsetMask(3)),
            Err(ConstructError::NotAZero(_))
        ));
    }
}
