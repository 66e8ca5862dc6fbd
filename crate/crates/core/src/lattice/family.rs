use std::sync::Arc;

use super::{AbstractLattice, LatticeError};
use crate::subset::{SubsetError, SubsetMask, Universe, MAX_UNIVERSE};

/// A finite family of distinct subsets of a labelled universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Arc<Universe>,
    sets: Vec<SubsetMask>,
}

impl SetFamily {
    /// Duplicates are dropped, first occurrence wins.
    pub fn new(universe: &Arc<Universe>, sets: impl IntoIterator<Item = SubsetMask>) -> Result<SetFamily, SubsetError> {
        let full = universe.full_mask();
        let mut out: Vec<SubsetMask> = Vec::new();
        for s in sets {
            if !s.is_subset(full) {
                return Err(SubsetError::OutOfRange(s.0));
            }
            if !out.contains(&s) {
                out.push(s);
            }
        }
        Ok(SetFamily {
            universe: universe.clone(),
            sets: out,
        })
    }

    /// Family over `labels`, sets given as label lists.
    pub fn from_labels<S: AsRef<str>>(labels: &[S], sets: &[&[S]]) -> Result<SetFamily, SubsetError> {
        let u = Universe::new(labels.iter().map(|s| s.as_ref().to_string()))?;
        let masks = sets.iter().map(|s| u.mask_of(s)).collect::<Result<Vec<_>, _>>()?;
        SetFamily::new(&u, masks)
    }

    /// Family whose sets are written as strings of one-character labels,
    /// e.g. `["ad", "bd", "cd"]`. The universe is the sorted set of
    /// characters used.
    pub fn from_words(words: &[&str]) -> Result<SetFamily, SubsetError> {
        let mut chars: Vec<char> = words.iter().flat_map(|w| w.chars()).collect();
        chars.sort();
        chars.dedup();
        let u = Universe::new(chars.iter().map(|c| c.to_string()))?;
        let masks = words
            .iter()
            .map(|w| {
                let ls: Vec<String> = w.chars().map(|c| c.to_string()).collect();
                u.mask_of(&ls)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SetFamily::new(&u, masks)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn union(&self) -> SubsetMask {
        self.sets.iter().fold(SubsetMask::EMPTY, |a, &b| a.union(b))
    }

    /// Intersection of all members; the whole universe for the empty family.
    pub fn intersection(&self) -> SubsetMask {
        self.sets
            .iter()
            .fold(self.universe.full_mask(), |a, &b| a.intersection(b))
    }

    /// Whether the union of the family is one of its members.
    pub fn is_trivial(&self) -> bool {
        self.sets.is_empty() || self.sets.contains(&self.union())
    }

    pub fn is_co_trivial(&self) -> bool {
        self.sets.is_empty() || self.sets.contains(&self.intersection())
    }

    pub fn render(&self) -> String {
        let v: Vec<String> = self.sets.iter().map(|&s| self.universe.render(s)).collect();
        format!("[{}]", v.join(", "))
    }
}

/// Complements every member inside its union.
pub fn dualize_family(f: &SetFamily) -> SetFamily {
    complement_family(f, f.union())
}

/// Complements every member inside `ambient`.
pub fn complement_family(f: &SetFamily, ambient: SubsetMask) -> SetFamily {
    SetFamily {
        universe: f.universe.clone(),
        sets: f.sets.iter().map(|&x| ambient.difference(x)).collect(),
    }
}

/// The family of principal downsets `{↓U : U ≠ top}`, one fresh atom per
/// non-top node. Atom `i` stands for node `i` (with the top skipped), and
/// is labelled `u<i>`.
///
/// When the top has a single lower cover, the returned family is trivial,
/// since no intersection lattice has that shape.
pub fn tightify(l: &AbstractLattice) -> Result<SetFamily, LatticeError> {
    let o = l.order();
    let m = o.len();
    if m <= 1 {
        return Err(LatticeError::DegenerateLattice);
    }
    if m - 1 > MAX_UNIVERSE {
        return Err(LatticeError::TooManyAtoms(m - 1));
    }
    let nodes: Vec<usize> = (0..m).filter(|&i| i != o.top()).collect();
    let atom = |node: usize| nodes.iter().position(|&x| x == node).unwrap();
    let u = Universe::new(nodes.iter().map(|i| format!("u{i}")))?;
    let sets = nodes.iter().map(|&v| {
        std::iter::once(v)
            .chain(o.strictly_below(v).iter().copied())
            .fold(SubsetMask::EMPTY, |acc, w| acc.with(atom(w)))
    });
    Ok(SetFamily::new(&u, sets)?)
}
