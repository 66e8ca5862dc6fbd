//! Checks that leaf multiplicities of a witness equal the Möbius values
//! they are forced to take.

use thiserror::Error;

use super::{evaluate, BaseCatalog, DotError, LeafRef, WitnessTree};
use crate::lattice::IntersectionLattice;
use crate::mobius::{generalized_mobius, mobius_to_top, nti};
use crate::subset::{AtomSet, Config};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error(transparent)]
    Tree(#[from] DotError),
}

impl LawError {
    pub fn name(&self) -> &'static str {
        match self {
            LawError::ContextMismatch(_) => "ContextMismatchError",
            LawError::Tree(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub what: String,
    pub expected: i64,
    pub actual: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    /// Number of equalities checked.
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl MultiplicityReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }
}

/// Where the expected multiplicities come from.
pub trait LawContext<T: AtomSet> {
    fn check(&self, t: &WitnessTree, base: &BaseCatalog<T>) -> Result<MultiplicityReport, LawError>;
}

/// Full intersection lattice: a tree over non-trivial intersections that
/// evaluates to the top uses each node `U` with multiplicity `-μ(U, top)`.
impl<T: AtomSet> LawContext<T> for IntersectionLattice<T> {
    fn check(&self, t: &WitnessTree, base: &BaseCatalog<T>) -> Result<MultiplicityReport, LawError> {
        if !self.is_full() {
            return Err(LawError::ContextMismatch("lattice is not full".into()));
        }
        let allowed = nti(self);
        let mut node_of = Vec::new();
        for e in base.entries() {
            match self.index_of(e) {
                Some(i) if allowed.contains(&i) => node_of.push(i),
                _ => {
                    return Err(LawError::ContextMismatch(format!(
                        "{} is not a non-trivial intersection",
                        e.render()
                    )))
                }
            }
        }
        if &evaluate(t, base)? != self.top_set() {
            return Err(LawError::ContextMismatch("tree does not evaluate to the top".into()));
        }
        let mu = mobius_to_top(self.order());
        let mult = t.multiplicities();
        let mut report = MultiplicityReport {
            checked: 0,
            mismatches: Vec::new(),
        };
        for &u in &allowed {
            let actual: i64 = node_of
                .iter()
                .enumerate()
                .filter(|&(_, &n)| n == u)
                .map(|(k, _)| mult.get(&LeafRef::Base(k)).copied().unwrap_or(0))
                .sum();
            report.checked += 1;
            if actual != -mu[u] {
                report.mismatches.push(Mismatch {
                    what: self.node(u).render(),
                    expected: -mu[u],
                    actual,
                });
            }
        }
        Ok(report)
    }
}

/// A downset of the Boolean lattice with principal downsets as leaves:
/// each `I(X)` occurs with multiplicity `μ̂(X)`.
pub struct PrincipalDownsets<'a>(pub &'a Config);

impl LawContext<Config> for PrincipalDownsets<'_> {
    fn check(&self, t: &WitnessTree, base: &BaseCatalog<Config>) -> Result<MultiplicityReport, LawError> {
        let i = self.0;
        if !i.is_downset() {
            return Err(LawError::ContextMismatch("configuration is not a downset".into()));
        }
        let mut gen_of = Vec::new();
        for e in base.entries() {
            let max = e.maximal();
            if max.len() != 1 || *e != Config::principal(i.universe(), max[0]) {
                return Err(LawError::ContextMismatch(format!(
                    "{} is not a principal downset",
                    e.render()
                )));
            }
            gen_of.push(max[0]);
        }
        if &evaluate(t, base)? != i {
            return Err(LawError::ContextMismatch(
                "tree does not evaluate to the downset".into(),
            ));
        }
        let mu = generalized_mobius(i).map_err(|e| LawError::ContextMismatch(e.to_string()))?;
        let mult = t.multiplicities();
        let mut report = MultiplicityReport {
            checked: 0,
            mismatches: Vec::new(),
        };
        for x in i.universe().full_mask().subsets() {
            let actual: i64 = gen_of
                .iter()
                .enumerate()
                .filter(|&(_, &g)| g == x)
                .map(|(k, _)| mult.get(&LeafRef::Base(k)).copied().unwrap_or(0))
                .sum();
            report.checked += 1;
            let expected = i64::from(mu.get(x));
            if actual != expected {
                report.mismatches.push(Mismatch {
                    what: i.universe().render(x),
                    expected,
                    actual,
                });
            }
        }
        Ok(report)
    }
}

pub fn check_multiplicity_laws<T: AtomSet, C: LawContext<T> + ?Sized>(
    t: &WitnessTree,
    base: &BaseCatalog<T>,
    context: &C,
) -> Result<MultiplicityReport, LawError> {
    context.check(t, base)
}
