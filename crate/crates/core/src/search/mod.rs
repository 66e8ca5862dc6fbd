//! Witness search over a base catalog: breadth-first search over
//! left-linear step sequences, the same with exact leaf usage, a fixpoint
//! over general trees, and a SAT encoding. Also the enumeration of
//! instances and the conjecture scan.

mod enumerate;
mod sat;
mod scan;

pub use enumerate::{all_configs, canonical_form, enumerate_downsets, random_family, sperner_families};
pub use sat::{emit_cnf, sat_witness, Cnf};
pub use scan::{non_downset_counterexample, scan, CheckRecord, Formulation, ScanOptions, ScanReport};

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::expr::{evaluate, BaseCatalog, DotError, Sign, WitnessTree};
use crate::lattice::{IntersectionLattice, LatticeError, SetFamily, UnionLattice};
use crate::mobius::{generalized_mobius, mobius_from_bottom, mobius_to_top, nci, ncpd, ncu};
use crate::subset::{AtomSet, Config, SubsetError, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space has {0} atoms, more than 64")]
    TooManyAtoms(usize),
    #[error("polarity constraints need one multiplicity per base entry")]
    MissingMultiplicities,
    #[error("returned tree failed validation: {0}")]
    Invalid(String),
    #[error("configuration is not a downset")]
    NotADownset,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error(transparent)]
    Tree(#[from] DotError),
}

impl SearchError {
    pub fn name(&self) -> &'static str {
        match self {
            SearchError::TooManyAtoms(_) => "TooManyAtomsError",
            SearchError::MissingMultiplicities => "MissingMultiplicitiesError",
            SearchError::Invalid(_) => "InvalidWitnessError",
            SearchError::NotADownset => "NotADownsetError",
            SearchError::Lattice(e) => e.name(),
            SearchError::Subset(e) => e.name(),
            SearchError::Tree(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Exhaustive,
    Sat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Only left-linear trees; otherwise a failed left-linear search falls
    /// back to the closure over general trees.
    pub left_linear_only: bool,
    /// Every base entry is used exactly `|m|` times with the sign of `m`,
    /// where `m` is its forced multiplicity.
    pub polarity_constrained: bool,
    /// Bound on the number of left-linear steps; `None` picks
    /// `max(2·|target|, |base|)`. Ignored in polarity-constrained mode,
    /// where the step count is fixed.
    pub max_steps: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Bound on visited states, which keeps timeouts deterministic.
    pub max_states: usize,
    pub engine: Engine,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            left_linear_only: true,
            polarity_constrained: false,
            max_steps: None,
            time_budget: None,
            max_states: 2_000_000,
            engine: Engine::Exhaustive,
        }
    }
}

impl SearchOptions {
    pub fn strong() -> SearchOptions {
        SearchOptions {
            polarity_constrained: true,
            ..SearchOptions::default()
        }
    }

    pub fn steps_for(&self, target_len: usize, base_len: usize) -> usize {
        self.max_steps.unwrap_or((2 * target_len).max(base_len))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `steps` counts leaves of the tree.
    Witness {
        tree: WitnessTree,
        steps: usize,
    },
    /// No witness within `max_steps` left-linear steps, nor (unless
    /// left-linear only) among general trees.
    Refuted {
        max_steps: usize,
    },
    Timeout,
}

impl Verdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, Verdict::Witness { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Witness { .. } => "witness",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Timeout => "timeout",
        }
    }

    pub fn tree(&self) -> Option<&WitnessTree> {
        match self {
            Verdict::Witness { tree, .. } => Some(tree),
            _ => None,
        }
    }
}

/// Base and target as bitsets over the atoms in play.
#[derive(Debug, Clone)]
pub(crate) struct Encoded {
    pub atoms: usize,
    pub base: Vec<u64>,
    pub target: u64,
}

pub(crate) fn encode<T: AtomSet>(base: &BaseCatalog<T>, target: &T) -> Result<Encoded, SearchError> {
    let mut atoms: Vec<usize> = target.atoms();
    for e in base.entries() {
        atoms.extend(e.atoms());
    }
    atoms.sort_unstable();
    atoms.dedup();
    if atoms.len() > 64 {
        return Err(SearchError::TooManyAtoms(atoms.len()));
    }
    let pos: HashMap<usize, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let bits = |s: &T| s.atoms().iter().fold(0u64, |acc, a| acc | 1 << pos[a]);
    Ok(Encoded {
        atoms: atoms.len(),
        base: base.entries().iter().map(bits).collect(),
        target: bits(target),
    })
}

pub(crate) struct Clock {
    start: Instant,
    budget: Option<Duration>,
}

impl Clock {
    pub(crate) fn new(budget: Option<Duration>) -> Clock {
        Clock {
            start: Instant::now(),
            budget,
        }
    }

    fn expired(&self) -> bool {
        self.budget.is_some_and(|b| self.start.elapsed() > b)
    }
}

/// Searches for a tree over `base` evaluating to `target`. With polarity
/// constraints, `multiplicities[k]` is the forced multiplicity of entry `k`.
pub fn exhaustive_witness<T: AtomSet>(
    base: &BaseCatalog<T>,
    target: &T,
    multiplicities: Option<&[i64]>,
    opts: &SearchOptions,
) -> Result<Verdict, SearchError> {
    let enc = encode(base, target)?;
    let max_steps = opts.steps_for(target.len(), base.len());
    let clock = Clock::new(opts.time_budget);
    let found = if opts.polarity_constrained {
        let m = multiplicities
            .filter(|m| m.len() == base.len())
            .ok_or(SearchError::MissingMultiplicities)?;
        strong_search(&enc, m, opts.max_states, &clock)
    } else {
        match weak_search(&enc, max_steps, opts.max_states, &clock) {
            Outcome::Refuted if !opts.left_linear_only => closure_search(&enc, opts.max_states, &clock),
            o => o,
        }
    };
    finish(found, base, target, max_steps)
}

pub(crate) enum Outcome {
    Found(WitnessTree),
    Refuted,
    Timeout,
}

pub(crate) fn finish<T: AtomSet>(
    found: Outcome,
    base: &BaseCatalog<T>,
    target: &T,
    max_steps: usize,
) -> Result<Verdict, SearchError> {
    match found {
        Outcome::Found(tree) => {
            let v = evaluate(&tree, base)?;
            if &v != target {
                return Err(SearchError::Invalid(format!("evaluates to {}", v.render())));
            }
            let steps = tree
                .leaves()
                .iter()
                .filter(|l| matches!(l, crate::expr::LeafRef::Base(_)))
                .count();
            Ok(Verdict::Witness { tree, steps })
        }
        Outcome::Refuted => Ok(Verdict::Refuted { max_steps }),
        Outcome::Timeout => Ok(Verdict::Timeout),
    }
}

pub(crate) fn steps_to_tree(steps: &[(Sign, usize)]) -> WitnessTree {
    let steps: Vec<(Sign, WitnessTree)> = steps.iter().map(|&(s, k)| (s, WitnessTree::Leaf(k))).collect();
    WitnessTree::from_steps(&steps)
}

/// Breadth-first search from the empty set; a shortest step sequence.
fn weak_search(enc: &Encoded, max_steps: usize, max_states: usize, clock: &Clock) -> Outcome {
    if enc.target == 0 {
        return Outcome::Found(WitnessTree::Empty);
    }
    let mut parent: HashMap<u64, (u64, Sign, usize)> = HashMap::new();
    let mut queue = VecDeque::from([(0u64, 0usize)]);
    let mut seen = HashSet::from([0u64]);
    while let Some((s, d)) = queue.pop_front() {
        if d == max_steps {
            continue;
        }
        if seen.len() > max_states || clock.expired() {
            return Outcome::Timeout;
        }
        for (k, &b) in enc.base.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let next = if s & b == 0 {
                Some((s | b, Sign::Plus))
            } else if b & !s == 0 {
                Some((s & !b, Sign::Minus))
            } else {
                None
            };
            let Some((t, sign)) = next else { continue };
            if !seen.insert(t) {
                continue;
            }
            parent.insert(t, (s, sign, k));
            if t == enc.target {
                let mut steps = Vec::new();
                let mut cur = t;
                while cur != 0 {
                    let (p, sign, k) = parent[&cur];
                    steps.push((sign, k));
                    cur = p;
                }
                steps.reverse();
                return Outcome::Found(steps_to_tree(&steps));
            }
            queue.push_back((t, d + 1));
        }
    }
    Outcome::Refuted
}

/// Depth-first search where entry `k` is used exactly `|m[k]|` times with
/// sign `sgn(m[k])`.
fn strong_search(enc: &Encoded, m: &[i64], max_states: usize, clock: &Clock) -> Outcome {
    let mut remaining: Vec<u32> = m.iter().map(|x| x.unsigned_abs() as u32).collect();
    let signs: Vec<Sign> = m
        .iter()
        .map(|&x| if x < 0 { Sign::Minus } else { Sign::Plus })
        .collect();
    let mut dead: HashSet<(u64, Vec<u32>)> = HashSet::new();
    let mut path = Vec::new();
    let mut budget = Budget {
        states: 0,
        max_states,
        clock,
        out: false,
    };
    if dfs(enc, &signs, 0, &mut remaining, &mut path, &mut dead, &mut budget) {
        Outcome::Found(steps_to_tree(&path))
    } else if budget.out {
        Outcome::Timeout
    } else {
        Outcome::Refuted
    }
}

struct Budget<'a> {
    states: usize,
    max_states: usize,
    clock: &'a Clock,
    out: bool,
}

fn dfs(
    enc: &Encoded,
    signs: &[Sign],
    s: u64,
    remaining: &mut Vec<u32>,
    path: &mut Vec<(Sign, usize)>,
    dead: &mut HashSet<(u64, Vec<u32>)>,
    budget: &mut Budget,
) -> bool {
    if remaining.iter().all(|&r| r == 0) {
        return s == enc.target;
    }
    if dead.contains(&(s, remaining.clone())) {
        return false;
    }
    budget.states += 1;
    if budget.states > budget.max_states || (budget.states.is_multiple_of(1024) && budget.clock.expired()) {
        budget.out = true;
        return false;
    }
    for k in 0..enc.base.len() {
        if remaining[k] == 0 {
            continue;
        }
        let b = enc.base[k];
        let t = match signs[k] {
            Sign::Plus if s & b == 0 => s | b,
            Sign::Minus if b & !s == 0 => s & !b,
            _ => continue,
        };
        remaining[k] -= 1;
        path.push((signs[k], k));
        if dfs(enc, signs, t, remaining, path, dead, budget) {
            return true;
        }
        path.pop();
        remaining[k] += 1;
        if budget.out {
            return false;
        }
    }
    dead.insert((s, remaining.clone()));
    false
}

#[derive(Clone, Copy)]
enum Made {
    Empty,
    Leaf(usize),
    Union(usize, usize),
    Comp(usize, usize),
}

/// Fixpoint of the base under both operations, keeping one derivation per
/// set.
pub(crate) fn closure_search(enc: &Encoded, max_states: usize, clock: &Clock) -> Outcome {
    let mut sets: Vec<u64> = Vec::new();
    let mut how: Vec<Made> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut add = |s: u64, m: Made, sets: &mut Vec<u64>, how: &mut Vec<Made>| {
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
            e.insert(sets.len());
            sets.push(s);
            how.push(m);
            s == enc.target
        } else {
            false
        }
    };
    let mut done = add(0, Made::Empty, &mut sets, &mut how);
    for (k, &b) in enc.base.iter().enumerate() {
        done |= add(b, Made::Leaf(k), &mut sets, &mut how);
    }
    let mut i = 0;
    while !done && i < sets.len() {
        if sets.len() > max_states || clock.expired() {
            return Outcome::Timeout;
        }
        let x = sets[i];
        for j in 0..=i {
            let y = sets[j];
            if x & y == 0 {
                done |= add(x | y, Made::Union(i, j), &mut sets, &mut how);
            }
            if y & !x == 0 {
                done |= add(x & !y, Made::Comp(i, j), &mut sets, &mut how);
            }
            if x & !y == 0 {
                done |= add(y & !x, Made::Comp(j, i), &mut sets, &mut how);
            }
            if done {
                break;
            }
        }
        i += 1;
    }
    if !done {
        return Outcome::Refuted;
    }
    let at = sets.iter().position(|&s| s == enc.target).expect("target was added");
    Outcome::Found(rebuild(&how, at))
}

fn rebuild(how: &[Made], i: usize) -> WitnessTree {
    match how[i] {
        Made::Empty => WitnessTree::Empty,
        Made::Leaf(k) => WitnessTree::Leaf(k),
        Made::Union(a, b) => {
            let mut cs = Vec::new();
            for t in [rebuild(how, a), rebuild(how, b)] {
                match t {
                    WitnessTree::DUnion(inner) => cs.extend(inner),
                    WitnessTree::Empty => {}
                    t => cs.push(t),
                }
            }
            match cs.len() {
                0 => WitnessTree::Empty,
                1 => cs.pop().unwrap(),
                _ => WitnessTree::DUnion(cs),
            }
        }
        Made::Comp(a, b) => WitnessTree::scomp(rebuild(how, a), rebuild(how, b)),
    }
}

/// Dispatches on the engine.
pub fn find_witness<T: AtomSet>(
    base: &BaseCatalog<T>,
    target: &T,
    multiplicities: Option<&[i64]>,
    opts: &SearchOptions,
) -> Result<Verdict, SearchError> {
    match opts.engine {
        Engine::Exhaustive => exhaustive_witness(base, target, multiplicities, opts),
        Engine::Sat => sat_witness(base, target, multiplicities, opts),
    }
}

/// A search instance together with its verdict.
#[derive(Debug, Clone)]
pub struct Checked<T: AtomSet> {
    pub catalog: BaseCatalog<T>,
    pub target: T,
    /// Forced multiplicity of each catalog entry.
    pub multiplicities: Vec<i64>,
    pub verdict: Verdict,
}

/// Base `nci(L)` and target the top, for the lattice of `f`.
pub fn nci_instance(f: &SetFamily) -> Result<(BaseCatalog<SubsetMask>, SubsetMask, Vec<i64>), SearchError> {
    let l = IntersectionLattice::from_family(f)?;
    let mu = mobius_to_top(l.order());
    let nodes = nci(&l);
    let u = f.universe();
    let entries = nodes.iter().map(|&i| *l.node(i)).collect::<Vec<_>>();
    let names = entries.iter().map(|&m| u.render(m)).collect();
    let mult = nodes.iter().map(|&i| -mu[i]).collect();
    Ok((
        BaseCatalog::with_names(SubsetMask::EMPTY, entries, names),
        *l.top_set(),
        mult,
    ))
}

/// Base `ncu(U)` and target the bottom, for the union lattice of `f`.
pub fn ncu_instance(f: &SetFamily) -> Result<(BaseCatalog<SubsetMask>, SubsetMask, Vec<i64>), SearchError> {
    let l = UnionLattice::from_family(f)?;
    let mu = mobius_from_bottom(l.order());
    let nodes = ncu(&l);
    let u = f.universe();
    let entries = nodes.iter().map(|&i| *l.node(i)).collect::<Vec<_>>();
    let names = entries.iter().map(|&m| u.render(m)).collect();
    let mult = nodes.iter().map(|&i| -mu[i]).collect();
    Ok((
        BaseCatalog::with_names(SubsetMask::EMPTY, entries, names),
        *l.bottom_set(),
        mult,
    ))
}

/// Base `ncpd(I)` as principal downsets and target `I`. Configurations
/// that are not downsets are accepted only with `allow_non_downset`.
pub fn ncpd_instance(i: &Config, allow_non_downset: bool) -> Result<(BaseCatalog<Config>, Vec<i64>), SearchError> {
    if !allow_non_downset && !i.is_downset() {
        return Err(SearchError::NotADownset);
    }
    let u = i.universe();
    let mu = generalized_mobius(i)?;
    let gens = ncpd(i)?;
    let entries = gens.iter().map(|&x| Config::principal(u, x)).collect();
    let names = gens.iter().map(|&x| format!("I{}", u.render(x))).collect();
    let mult = gens.iter().map(|&x| i64::from(mu.get(x))).collect();
    Ok((BaseCatalog::with_names(Config::empty(u), entries, names), mult))
}

fn run<T: AtomSet>(
    catalog: BaseCatalog<T>,
    target: T,
    multiplicities: Vec<i64>,
    opts: &SearchOptions,
) -> Result<Checked<T>, SearchError> {
    let verdict = find_witness(&catalog, &target, Some(&multiplicities), opts)?;
    Ok(Checked {
        catalog,
        target,
        multiplicities,
        verdict,
    })
}

pub fn check_nci(f: &SetFamily, opts: &SearchOptions) -> Result<Checked<SubsetMask>, SearchError> {
    let (c, t, m) = nci_instance(f)?;
    run(c, t, m, opts)
}

pub fn check_ncu(f: &SetFamily, opts: &SearchOptions) -> Result<Checked<SubsetMask>, SearchError> {
    let (c, t, m) = ncu_instance(f)?;
    run(c, t, m, opts)
}

pub fn check_ncpd(i: &Config, opts: &SearchOptions) -> Result<Checked<Config>, SearchError> {
    let (c, m) = ncpd_instance(i, false)?;
    run(c, i.clone(), m, opts)
}

/// As [`check_ncpd`], but for any configuration.
pub fn check_ncpd_config(i: &Config, opts: &SearchOptions) -> Result<Checked<Config>, SearchError> {
    let (c, m) = ncpd_instance(i, true)?;
    run(c, i.clone(), m, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Universe;

    fn family(words: &[&str]) -> SetFamily {
        SetFamily::from_words(words).unwrap()
    }

    #[test]
    fn two_tier_top_found() {
        let c = check_nci(&crate::samples::l2(), &SearchOptions::default()).unwrap();
        let t = c.verdict.tree().unwrap();
        assert_eq!(evaluate(t, &c.catalog).unwrap(), c.target);
        assert!(t.is_left_linear());
    }

    #[test]
    fn ungenerated_target_is_refuted() {
        let f = family(&["ab", "c"]);
        let u = f.universe();
        let base = BaseCatalog::new(SubsetMask::EMPTY, vec![u.mask_of(&["a", "b"]).unwrap()]);
        let a = u.mask_of(&["a"]).unwrap();
        for ll in [true, false] {
            let opts = SearchOptions {
                left_linear_only: ll,
                max_steps: Some(6),
                ..SearchOptions::default()
            };
            let v = exhaustive_witness(&base, &a, None, &opts).unwrap();
            assert_eq!(v, Verdict::Refuted { max_steps: 6 });
        }
    }

    #[test]
    fn thirteen_node_lattice_has_a_witness() {
        let c = check_nci(&crate::samples::l5(), &SearchOptions::default()).unwrap();
        assert!(c.verdict.is_witness());
    }

    #[test]
    fn strong_mode_respects_multiplicities() {
        for f in [
            crate::samples::l2(),
            crate::samples::l3(),
            crate::samples::l4(),
            crate::samples::three_sets(),
        ] {
            let c = check_nci(&f, &SearchOptions::strong()).unwrap();
            let t = c.verdict.tree().expect("witness");
            let mult = t.multiplicities();
            for (k, &m) in c.multiplicities.iter().enumerate() {
                let got = mult.get(&crate::expr::LeafRef::Base(k)).copied().unwrap_or(0);
                assert_eq!(got, m);
            }
            assert_eq!(
                t.leaves().len() as i64,
                c.multiplicities.iter().map(|m| m.abs()).sum::<i64>()
            );
        }
    }

    #[test]
    fn closure_fallback_ignores_the_step_bound() {
        let f = family(&["ab", "c"]);
        let u = f.universe();
        let base = BaseCatalog::new(
            SubsetMask::EMPTY,
            vec![u.mask_of(&["a", "b"]).unwrap(), u.mask_of(&["b"]).unwrap()],
        );
        let a = u.mask_of(&["a"]).unwrap();
        let tight = SearchOptions {
            max_steps: Some(1),
            ..SearchOptions::default()
        };
        assert!(!exhaustive_witness(&base, &a, None, &tight).unwrap().is_witness());
        let general = SearchOptions {
            left_linear_only: false,
            ..tight
        };
        let v = exhaustive_witness(&base, &a, None, &general).unwrap();
        assert_eq!(
            v.tree(),
            Some(&WitnessTree::scomp(WitnessTree::Leaf(0), WitnessTree::Leaf(1)))
        );
    }

    #[test]
    fn principal_downset_is_one_leaf() {
        let u = Universe::numbered(3).unwrap();
        let i = Config::principal(&u, SubsetMask(0b011));
        let c = check_ncpd(&i, &SearchOptions::default()).unwrap();
        assert_eq!(
            c.verdict,
            Verdict::Witness {
                tree: WitnessTree::Leaf(0),
                steps: 1
            }
        );
    }

    #[test]
    fn empty_target_is_the_empty_tree() {
        let u = Universe::numbered(2).unwrap();
        let c = check_ncpd(&Config::empty(&u), &SearchOptions::default()).unwrap();
        assert_eq!(
            c.verdict,
            Verdict::Witness {
                tree: WitnessTree::Empty,
                steps: 0
            }
        );
    }

    #[test]
    fn state_cap_gives_timeout() {
        let opts = SearchOptions {
            max_states: 1,
            ..SearchOptions::default()
        };
        let c = check_nci(&crate::samples::l5(), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Timeout);
    }
}
