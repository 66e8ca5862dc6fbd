use std::collections::{BTreeMap, HashMap};

use super::{AbstractLattice, LatticeError, Order, SetFamily};
use crate::subset::{AtomSet, SubsetMask};

/// The intersection lattice of a non-trivial family: the closure of the
/// members under pairwise intersection, plus the union as top.
///
/// Nodes are sorted by cardinality and then by their natural order, so the
/// top is always the last node.
#[derive(Debug, Clone)]
pub struct IntersectionLattice<T: AtomSet = SubsetMask> {
    nodes: Vec<T>,
    index: HashMap<T, usize>,
    generators: Vec<usize>,
    min_of: BTreeMap<usize, usize>,
    order: Order,
}

impl IntersectionLattice<SubsetMask> {
    pub fn from_family(f: &SetFamily) -> Result<Self, LatticeError> {
        IntersectionLattice::build(f.sets().to_vec())
    }
}

impl<T: AtomSet> IntersectionLattice<T> {
    pub fn build(sets: Vec<T>) -> Result<Self, LatticeError> {
        let mut gens: Vec<T> = Vec::new();
        for s in sets {
            if !gens.contains(&s) {
                gens.push(s);
            }
        }
        let Some(first) = gens.first() else {
            return Err(LatticeError::TrivialFamily);
        };
        let top = gens.iter().skip(1).fold(first.clone(), |a, b| a.union(b));
        if gens.contains(&top) {
            return Err(LatticeError::TrivialFamily);
        }
        let mut all: Vec<T> = gens.clone();
        let mut seen: std::collections::HashSet<T> = all.iter().cloned().collect();
        let mut frontier = 0;
        while frontier < all.len() {
            let x = all[frontier].clone();
            for i in 0..frontier {
                let y = all[i].intersection(&x);
                if seen.insert(y.clone()) {
                    all.push(y);
                }
            }
            frontier += 1;
        }
        all.push(top);
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<T, usize> = all.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let mut min_of = BTreeMap::new();
        let top_set = all.last().unwrap().clone();
        for a in top_set.atoms() {
            let meet = gens
                .iter()
                .filter(|g| g.contains_atom(a))
                .skip(1)
                .fold(gens.iter().find(|g| g.contains_atom(a)).unwrap().clone(), |acc, g| {
                    acc.intersection(g)
                });
            min_of.insert(a, index[&meet]);
        }
        let order = Order::from_leq(all.len(), |i, j| all[i].is_subset(&all[j]));
        Ok(IntersectionLattice {
            nodes: all,
            index,
            generators,
            min_of,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &T {
        &self.nodes[i]
    }

    pub fn index_of(&self, s: &T) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top_set(&self) -> &T {
        &self.nodes[self.top()]
    }

    /// Node indices of the original members, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn to_abstract(&self) -> AbstractLattice {
        AbstractLattice::from_order(self.order.clone())
    }

    /// Smallest node containing the atom.
    pub fn min_of(&self, atom: usize) -> Option<usize> {
        self.min_of.get(&atom).copied()
    }

    /// Atoms whose smallest containing node is `i`.
    pub fn private_atoms(&self, i: usize) -> Vec<usize> {
        self.min_of.iter().filter(|&(_, &n)| n == i).map(|(&a, _)| a).collect()
    }

    /// Every node below the top has a private atom.
    pub fn is_full(&self) -> bool {
        (0..self.top()).all(|i| !self.private_atoms(i).is_empty())
    }

    /// Every node below the top has exactly one private atom.
    pub fn is_tight(&self) -> bool {
        (0..self.top()).all(|i| self.private_atoms(i).len() == 1)
    }

    /// Every node below the top has at most one private atom.
    pub fn is_weakly_tight(&self) -> bool {
        (0..self.top()).all(|i| self.private_atoms(i).len() <= 1)
    }

    pub fn to_dot(&self, labels: &[String], mobius: Option<&[i64]>, highlight: &[usize]) -> String {
        self.order.to_dot(labels, mobius, highlight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(words: &[&str]) -> (SetFamily, IntersectionLattice) {
        let f = SetFamily::from_words(words).unwrap();
        let l = IntersectionLattice::from_family(&f).unwrap();
        (f, l)
    }

    fn render(f: &SetFamily, l: &IntersectionLattice) -> Vec<String> {
        l.nodes().iter().map(|&m| f.universe().labels_of(m).concat()).collect()
    }

    #[test]
    fn two_tier_family() {
        let (f, l) = lat(&["ad", "bd", "cd"]);
        assert_eq!(render(&f, &l), vec!["d", "ad", "bd", "cd", "abcd"]);
        assert_eq!(l.order().covers_up(0), &[1, 2, 3]);
        assert!(l.is_tight());
    }

    #[test]
    fn four_sets_nine_nodes() {
        let (f, l) = lat(&["ab", "ac", "bc", "d"]);
        assert_eq!(l.len(), 9);
        assert_eq!(render(&f, &l)[0], "");
        assert!(!l.is_full());
    }

    #[test]
    fn trivial_is_rejected() {
        let f = SetFamily::from_words(&["ab", "a"]).unwrap();
        assert_eq!(
            IntersectionLattice::from_family(&f).unwrap_err(),
            LatticeError::TrivialFamily
        );
    }

    #[test]
    fn cover_relation_is_reduced() {
        let (_, l) = lat(&["abc", "abd", "ae"]);
        for (c, p) in l.order().cover_pairs() {
            for k in 0..l.len() {
                let strictly_between =
                    k != c && k != p && l.node(c).is_subset(l.node(k)) && l.node(k).is_subset(l.node(p));
                assert!(!strictly_between);
            }
        }
    }
}
