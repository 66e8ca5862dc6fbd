//! Moving witnesses between the intersection, principal-downset and union
//! formulations.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{evaluate, evaluate_all, BaseCatalog, DotError, WitnessTree};
use crate::lattice::{complement_family, IntersectionLattice, LatticeError, SetFamily, UnionLattice};
use crate::mobius::{nci, ncpd, ncu};
use crate::search::{check_nci, check_ncu, SearchError, SearchOptions};
use crate::subset::{AtomSet, Config, SubsetError, SubsetMask, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("the target lattice is not full")]
    NotFull,
    #[error("the tree does not evaluate to the top")]
    NotTop,
    #[error("the lattice is not tight")]
    NotTight,
    #[error("the map is not an isomorphism of the lattices")]
    NotIsomorphism,
    #[error("leaf {0} is not a node below the top")]
    LeafNotNode(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("no witness for the translated instance")]
    NoTranslation,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error(transparent)]
    Tree(#[from] DotError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

impl BridgeError {
    pub fn name(&self) -> &'static str {
        match self {
            BridgeError::NotFull => "NotFullError",
            BridgeError::NotTop => "NotTopError",
            BridgeError::NotTight => "NotTightError",
            BridgeError::NotIsomorphism => "NotIsomorphismError",
            BridgeError::LeafNotNode(_) => "LeafNotNodeError",
            BridgeError::Mismatch(_) => "MismatchError",
            BridgeError::NoTranslation => "NoTranslationError",
            BridgeError::Lattice(e) => e.name(),
            BridgeError::Subset(e) => e.name(),
            BridgeError::Tree(e) => e.name(),
            BridgeError::Search(e) => e.name(),
        }
    }
}

/// A family seen as the downset it generates, together with the
/// intersection lattice of the powersets of its members.
#[derive(Debug, Clone)]
pub struct PowersetEmbedding {
    pub downset: Config,
    pub lattice: IntersectionLattice<Config>,
    /// `masks[i] = Some(X)` when node `i` is the principal downset `I(X)`;
    /// `None` for the top.
    pub masks: Vec<Option<SubsetMask>>,
}

impl PowersetEmbedding {
    /// Generators of the non-cancelling nodes.
    pub fn nci_masks(&self) -> Vec<SubsetMask> {
        nci(&self.lattice).into_iter().filter_map(|i| self.masks[i]).collect()
    }

    /// Node of `I(x)`, if it is one.
    pub fn node_of(&self, x: SubsetMask) -> Option<usize> {
        self.lattice.index_of(&Config::principal(self.downset.universe(), x))
    }
}

pub fn family_to_downset(f: &SetFamily) -> Result<PowersetEmbedding, BridgeError> {
    if f.is_trivial() {
        return Err(LatticeError::TrivialFamily.into());
    }
    let u = f.universe();
    let powersets: Vec<Config> = f.sets().iter().map(|&x| Config::principal(u, x)).collect();
    let lattice = IntersectionLattice::build(powersets)?;
    let downset = lattice.top_set().clone();
    let masks = (0..lattice.len())
        .map(|i| {
            let max = lattice.node(i).maximal();
            (i != lattice.top() && max.len() == 1).then(|| max[0])
        })
        .collect();
    Ok(PowersetEmbedding {
        downset,
        lattice,
        masks,
    })
}

/// The isomorphism from the lattice of `f` to the powerset lattice:
/// `S ↦ I(S)` and top to top.
pub fn powerset_isomorphism(l: &IntersectionLattice, emb: &PowersetEmbedding) -> Result<Vec<usize>, BridgeError> {
    let iso = (0..l.len())
        .map(|i| {
            if i == l.top() {
                Some(emb.lattice.top())
            } else {
                emb.node_of(*l.node(i))
            }
        })
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| BridgeError::Mismatch("intersection without a powerset node".into()))?;
    if !l.order().is_isomorphism(emb.lattice.order(), &iso) {
        return Err(BridgeError::NotIsomorphism);
    }
    Ok(iso)
}

/// Pulls a tree for the top of the full lattice `lf` back to `l` along the
/// isomorphism `iso: l → lf`, replacing each leaf `U'` by `iso⁻¹(U')`.
///
/// Every intermediate value is checked against the preimage under
/// `g(x) = α(iso(min(x)))`, with `α` the smallest private atom.
pub fn pull_back_tree<A: AtomSet, B: AtomSet>(
    l: &IntersectionLattice<A>,
    lf: &IntersectionLattice<B>,
    iso: &[usize],
    base: &BaseCatalog<B>,
    t: &WitnessTree,
) -> Result<(BaseCatalog<A>, WitnessTree), BridgeError> {
    if !l.order().is_isomorphism(lf.order(), iso) {
        return Err(BridgeError::NotIsomorphism);
    }
    if !lf.is_full() {
        return Err(BridgeError::NotFull);
    }
    if &evaluate(t, base)? != lf.top_set() {
        return Err(BridgeError::NotTop);
    }
    let mut inverse = vec![0; iso.len()];
    for (i, &j) in iso.iter().enumerate() {
        inverse[j] = i;
    }
    let mut entries = Vec::new();
    for e in base.entries() {
        match lf.index_of(e) {
            Some(j) if j != lf.top() => entries.push(l.node(inverse[j]).clone()),
            _ => return Err(BridgeError::LeafNotNode(e.render())),
        }
    }
    let names = entries.iter().map(AtomSet::render).collect();
    let pulled = BaseCatalog::with_names(l.top_set().empty_like(), entries, names);

    let g: BTreeMap<usize, usize> = l
        .top_set()
        .atoms()
        .into_iter()
        .map(|x| {
            let m = l.min_of(x).expect("atom of the top");
            (x, lf.private_atoms(iso[m])[0])
        })
        .collect();
    let preimage = |xs: &B| {
        let atoms: Vec<usize> = g
            .iter()
            .filter(|&(_, y)| xs.contains_atom(*y))
            .map(|(&x, _)| x)
            .collect();
        l.top_set().with_atoms(&atoms)
    };
    let before = evaluate_all(t, base)?;
    let after = evaluate_all(t, &pulled)?;
    for (path, v) in &before {
        if after.get(path) != Some(&preimage(v)) {
            return Err(BridgeError::Mismatch(format!("node at {path:?} is not the preimage")));
        }
    }
    Ok((pulled, t.clone()))
}

/// Turns a tree over principal downsets for `I(f)` into a tree over the
/// intersections of the tight family `f` for its union.
pub fn ncpd_witness_to_nci(
    f: &SetFamily,
    base: &BaseCatalog<Config>,
    t: &WitnessTree,
) -> Result<(BaseCatalog<SubsetMask>, WitnessTree), BridgeError> {
    let l = IntersectionLattice::from_family(f)?;
    if !l.is_tight() {
        return Err(BridgeError::NotTight);
    }
    let emb = family_to_downset(f)?;
    let iso = powerset_isomorphism(&l, &emb)?;
    let (c, tree) = pull_back_tree(&l, &emb.lattice, &iso, base, t)?;
    let allowed = nci(&l);
    for e in c.entries() {
        if !l.index_of(e).is_some_and(|i| allowed.contains(&i)) {
            return Err(BridgeError::LeafNotNode(f.universe().render(*e)));
        }
    }
    Ok((c, tree))
}

/// Both forms of a subtree over the complemented catalog: one evaluating
/// to the value, one to its complement.
struct Forms {
    plain: Option<WitnessTree>,
    comp: Option<WitnessTree>,
}

/// Rewrites `t` over the catalog of complements `A ∖ e`: leaves give
/// complements directly, and
/// `A∖(X∖̇Y) = (A∖X) ⊔ Y`, `X∖̇Y = (A∖Y) ∖̇ (A∖X)`,
/// `A∖(X⊔Y) = (A∖X) ∖̇ Y`.
fn forms(t: &WitnessTree) -> Forms {
    match t {
        WitnessTree::Empty => Forms {
            plain: Some(WitnessTree::Empty),
            comp: None,
        },
        WitnessTree::Leaf(k) => Forms {
            plain: None,
            comp: Some(WitnessTree::Leaf(*k)),
        },
        WitnessTree::SComp(l, r) => {
            let (l, r) = (forms(l), forms(r));
            let plain = match (&l, &r) {
                (Forms { plain: Some(a), .. }, Forms { plain: Some(b), .. }) => {
                    Some(WitnessTree::scomp(a.clone(), b.clone()))
                }
                (Forms { comp: Some(a), .. }, Forms { comp: Some(b), .. }) => {
                    Some(WitnessTree::scomp(b.clone(), a.clone()))
                }
                _ => None,
            };
            let comp = match (l.comp, r.plain) {
                (Some(a), Some(b)) => Some(WitnessTree::DUnion(vec![a, b])),
                _ => None,
            };
            Forms { plain, comp }
        }
        WitnessTree::DUnion(cs) => {
            let fs: Vec<Forms> = cs.iter().map(forms).collect();
            let plain = fs
                .iter()
                .map(|f| f.plain.clone())
                .collect::<Option<Vec<_>>>()
                .map(WitnessTree::DUnion);
            let comp = (0..fs.len()).find_map(|j| {
                let head = fs[j].comp.clone()?;
                let rest = fs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, f)| f.plain.clone())
                    .collect::<Option<Vec<_>>>()?;
                Some(match rest.len() {
                    0 => head,
                    1 => WitnessTree::scomp(head, rest.into_iter().next().unwrap()),
                    _ => WitnessTree::scomp(head, WitnessTree::DUnion(rest)),
                })
            });
            Forms { plain, comp }
        }
    }
}

/// A tree over `{A ∖ e}` evaluating to `A ∖ value(t)`, when the structural
/// rewrite applies.
pub fn complement_tree(t: &WitnessTree) -> Option<WitnessTree> {
    forms(t).comp
}

fn fresh_label(u: &Universe) -> String {
    let mut label = String::from("apex");
    while u.position(&label).is_some() {
        label.push('\'');
    }
    label
}

/// The union-side counterpart of a non-trivial family: complements inside
/// `∪f` plus one fresh element, so that the intersection of the result is
/// that element and the union lattice reversed is isomorphic to the
/// intersection lattice of `f`.
pub fn ncu_counterpart(f: &SetFamily) -> Result<SetFamily, LatticeError> {
    if f.is_trivial() {
        return Err(LatticeError::TrivialFamily);
    }
    let old = f.universe();
    let mut labels: Vec<String> = old.labels().to_vec();
    labels.push(fresh_label(old));
    let u = Universe::new(labels)?;
    let lifted = SetFamily::new(&u, f.sets().iter().copied())?;
    let ambient = f.union().with(old.len());
    Ok(complement_family(&lifted, ambient))
}

/// The intersection-side counterpart of a non-co-trivial family: the
/// complements inside its union.
pub fn nci_counterpart(g: &SetFamily) -> Result<SetFamily, LatticeError> {
    if g.is_co_trivial() {
        return Err(LatticeError::CoTrivialFamily);
    }
    Ok(complement_family(g, g.union()))
}

/// A translated witness and its instance.
#[derive(Debug, Clone)]
pub struct Translated {
    pub family: SetFamily,
    pub catalog: BaseCatalog<SubsetMask>,
    pub tree: WitnessTree,
    /// The structural rewrite failed and the tree came from a search.
    pub by_search: bool,
}

fn complemented_catalog(
    u: &Arc<Universe>,
    base: &BaseCatalog<SubsetMask>,
    ambient: SubsetMask,
) -> BaseCatalog<SubsetMask> {
    let entries: Vec<SubsetMask> = base.entries().iter().map(|&e| ambient.difference(e)).collect();
    let names = entries.iter().map(|&m| u.render(m)).collect();
    BaseCatalog::with_names(SubsetMask::EMPTY, entries, names)
}

fn check_leaves(entries: &[SubsetMask], allowed: &[SubsetMask], what: &str) -> Result<(), BridgeError> {
    match entries.iter().find(|e| !allowed.contains(e)) {
        Some(e) => Err(BridgeError::Mismatch(format!("{e} is not in {what}"))),
        None => Ok(()),
    }
}

/// An intersection witness for `f` becomes a union witness for
/// [`ncu_counterpart`]`(f)`.
pub fn nci_to_ncu(f: &SetFamily, base: &BaseCatalog<SubsetMask>, t: &WitnessTree) -> Result<Translated, BridgeError> {
    let l = IntersectionLattice::from_family(f)?;
    let nodes: Vec<SubsetMask> = nci(&l).into_iter().map(|i| *l.node(i)).collect();
    check_leaves(base.entries(), &nodes, "nci")?;
    if &evaluate(t, base)? != l.top_set() {
        return Err(BridgeError::NotTop);
    }
    let g = ncu_counterpart(f)?;
    let ambient = g.union().union(g.intersection());
    let ul = UnionLattice::from_family(&g)?;
    let allowed: Vec<SubsetMask> = ncu(&ul).into_iter().map(|i| *ul.node(i)).collect();
    let target = *ul.bottom_set();
    let catalog = complemented_catalog(g.universe(), base, ambient);
    if let Some(tree) = complement_tree(t) {
        if evaluate(&tree, &catalog)? == target {
            check_leaves(catalog.entries(), &allowed, "ncu")?;
            return Ok(Translated {
                family: g,
                catalog,
                tree,
                by_search: false,
            });
        }
    }
    let c = check_ncu(
        &g,
        &SearchOptions {
            left_linear_only: false,
            ..SearchOptions::default()
        },
    )?;
    let tree = c.verdict.tree().cloned().ok_or(BridgeError::NoTranslation)?;
    Ok(Translated {
        family: g,
        catalog: c.catalog,
        tree,
        by_search: true,
    })
}

/// A union witness for `g` becomes an intersection witness for
/// [`nci_counterpart`]`(g)`.
pub fn ncu_to_nci(g: &SetFamily, base: &BaseCatalog<SubsetMask>, t: &WitnessTree) -> Result<Translated, BridgeError> {
    let ul = UnionLattice::from_family(g)?;
    let nodes: Vec<SubsetMask> = ncu(&ul).into_iter().map(|i| *ul.node(i)).collect();
    check_leaves(base.entries(), &nodes, "ncu")?;
    if &evaluate(t, base)? != ul.bottom_set() {
        return Err(BridgeError::Mismatch("the tree does not evaluate to the bottom".into()));
    }
    let f = nci_counterpart(g)?;
    let l = IntersectionLattice::from_family(&f)?;
    let allowed: Vec<SubsetMask> = nci(&l).into_iter().map(|i| *l.node(i)).collect();
    let catalog = complemented_catalog(f.universe(), base, g.union());
    if let Some(tree) = complement_tree(t) {
        if &evaluate(&tree, &catalog)? == l.top_set() {
            check_leaves(catalog.entries(), &allowed, "nci")?;
            return Ok(Translated {
                family: f,
                catalog,
                tree,
                by_search: false,
            });
        }
    }
    let c = check_nci(
        &f,
        &SearchOptions {
            left_linear_only: false,
            ..SearchOptions::default()
        },
    )?;
    let tree = c.verdict.tree().cloned().ok_or(BridgeError::NoTranslation)?;
    Ok(Translated {
        family: f,
        catalog: c.catalog,
        tree,
        by_search: true,
    })
}

/// Whether `ncpd(I(f))` is the set of generators of the non-cancelling
/// powerset nodes.
pub fn embedding_agrees(f: &SetFamily) -> Result<bool, BridgeError> {
    let emb = family_to_downset(f)?;
    let mut a = ncpd(&emb.downset)?;
    let mut b = emb.nci_masks();
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::search::{check_ncpd, exhaustive_witness};

    fn words(f: &SetFamily, ms: &[SubsetMask]) -> Vec<String> {
        ms.iter().map(|&m| f.universe().labels_of(m).concat()).collect()
    }

    #[test]
    fn three_sets_embedding() {
        let f = samples::three_sets();
        let emb = family_to_downset(&f).unwrap();
        let mut got = words(&f, &ncpd(&emb.downset).unwrap());
        got.sort();
        assert_eq!(got, vec!["ab", "abce", "abd", "ac", "acf"]);
        assert!(embedding_agrees(&f).unwrap());
        let l = IntersectionLattice::from_family(&f).unwrap();
        let mut direct = words(&f, &nci(&l).into_iter().map(|i| *l.node(i)).collect::<Vec<_>>());
        direct.sort();
        assert_eq!(got, direct);
    }

    #[test]
    fn singleton_family_is_rejected() {
        let f = SetFamily::from_words(&["abc"]).unwrap();
        assert_eq!(
            family_to_downset(&f).unwrap_err(),
            BridgeError::Lattice(LatticeError::TrivialFamily)
        );
    }

    #[test]
    fn pull_back_reproduces_t2() {
        let (l3, l4) = (samples::l3(), samples::l4());
        let a = IntersectionLattice::from_family(&l3).unwrap();
        let b = IntersectionLattice::from_family(&l4).unwrap();
        let iso = samples::l3_to_l4_iso(&a, &b);
        let (c1, t1) = samples::t1_prime();
        let (c, t) = pull_back_tree(&a, &b, &iso, &c1, &t1).unwrap();
        let (c2, t2) = samples::t2();
        assert_eq!(t, t2);
        assert_eq!(c.entries(), c2.entries());
        assert_eq!(evaluate(&t, &c).unwrap(), *a.top_set());
    }

    #[test]
    fn identity_pull_back() {
        let f = samples::l4();
        let l = IntersectionLattice::from_family(&f).unwrap();
        let id: Vec<usize> = (0..l.len()).collect();
        let (c1, t1) = samples::t1();
        let (c, t) = pull_back_tree(&l, &l, &id, &c1, &t1).unwrap();
        assert_eq!(c.entries(), c1.entries());
        assert_eq!(t, t1);
    }

    #[test]
    fn forward_translation_fails() {
        // a ⊔ b ⊔ c ⊔ d over L3 pushed into L4 leaves by the isomorphism
        let (l3, l4) = (samples::l3(), samples::l4());
        let a = IntersectionLattice::from_family(&l3).unwrap();
        let b = IntersectionLattice::from_family(&l4).unwrap();
        let iso = samples::l3_to_l4_iso(&a, &b);
        let (c, t) = samples::l3_witness();
        let pushed: Vec<SubsetMask> = c
            .entries()
            .iter()
            .map(|e| *b.node(iso[a.index_of(e).unwrap()]))
            .collect();
        let c = BaseCatalog::new(SubsetMask::EMPTY, pushed);
        assert!(evaluate(&t, &c).is_err());
        // and L3 is not full, so pulling back into it is refused
        let id: Vec<usize> = (0..a.len()).collect();
        let (c3, t3) = samples::l3_witness();
        assert_eq!(pull_back_tree(&a, &a, &id, &c3, &t3).unwrap_err(), BridgeError::NotFull);
    }

    #[test]
    fn ncpd_to_nci_on_two_tier() {
        let f = samples::l2();
        let emb = family_to_downset(&f).unwrap();
        let c = check_ncpd(&emb.downset, &SearchOptions::default()).unwrap();
        let t = c.verdict.tree().unwrap();
        let (base, tree) = ncpd_witness_to_nci(&f, &c.catalog, t).unwrap();
        let abcd = f.universe().full_mask();
        assert_eq!(evaluate(&tree, &base).unwrap(), abcd);
    }

    #[test]
    fn ncpd_to_nci_requires_tight() {
        let f = samples::l3();
        let emb = family_to_downset(&f).unwrap();
        let c = check_ncpd(&emb.downset, &SearchOptions::default()).unwrap();
        let err = ncpd_witness_to_nci(&f, &c.catalog, c.verdict.tree().unwrap()).unwrap_err();
        assert_eq!(err, BridgeError::NotTight);
    }

    #[test]
    fn union_counterpart_nodes() {
        let f = samples::l2();
        let g = ncu_counterpart(&f).unwrap();
        let ul = UnionLattice::from_family(&g).unwrap();
        let l = IntersectionLattice::from_family(&f).unwrap();
        let ambient = g.union();
        let mut a: Vec<SubsetMask> = ncu(&ul).into_iter().map(|i| *ul.node(i)).collect();
        let mut b: Vec<SubsetMask> = nci(&l).into_iter().map(|i| ambient.difference(*l.node(i))).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(g.intersection().len(), 1);
    }

    #[test]
    fn witnesses_cross_to_the_union_side_and_back() {
        for f in [samples::l2(), samples::l3(), samples::l4(), samples::three_sets()] {
            let c = check_nci(&f, &SearchOptions::default()).unwrap();
            let t = c.verdict.tree().unwrap();
            let there = nci_to_ncu(&f, &c.catalog, t).unwrap();
            let back = ncu_to_nci(&there.family, &there.catalog, &there.tree).unwrap();
            let l = IntersectionLattice::from_family(&back.family).unwrap();
            assert_eq!(&evaluate(&back.tree, &back.catalog).unwrap(), l.top_set());
        }
    }

    #[test]
    fn structural_rewrite_of_two_tier_witness() {
        let f = samples::l2();
        let (c, t) = samples::l2_witness();
        // the sample catalog carries {d} beside the three generators
        let l = IntersectionLattice::from_family(&f).unwrap();
        assert!(c.entries().iter().all(|e| l.index_of(e).is_some()));
        let there = nci_to_ncu(&f, &c, &t).unwrap();
        assert!(!there.by_search);
        assert_eq!(there.tree, complement_tree(&t).unwrap());
    }

    #[test]
    fn complement_of_plain_union_needs_search() {
        let (c, t) = samples::l3_witness();
        assert!(complement_tree(&t).is_none());
        let there = nci_to_ncu(&samples::l3(), &c, &t).unwrap();
        assert!(there.by_search);
        assert!(!there.tree.is_left_linear());
    }

    #[test]
    fn union_side_has_no_left_linear_witness() {
        // every ncu node contains the bottom, so a step sequence can never
        // end exactly at it
        let g = ncu_counterpart(&samples::l3()).unwrap();
        let opts = SearchOptions {
            max_steps: Some(12),
            ..SearchOptions::default()
        };
        let c = check_ncu(&g, &opts).unwrap();
        assert_eq!(c.verdict, crate::search::Verdict::Refuted { max_steps: 12 });
        let v = exhaustive_witness(
            &c.catalog,
            &c.target,
            None,
            &SearchOptions {
                left_linear_only: false,
                ..opts
            },
        )
        .unwrap();
        assert!(v.is_witness());
    }
}
