use std::collections::HashMap;

use super::{AbstractLattice, LatticeError, Order, SetFamily};
use crate::subset::{AtomSet, SubsetMask};

/// The union lattice of a non-co-trivial family: the closure of the members
/// under pairwise union, plus the intersection as bottom (node 0).
#[derive(Debug, Clone)]
pub struct UnionLattice<T: AtomSet = SubsetMask> {
    nodes: Vec<T>,
    index: HashMap<T, usize>,
    generators: Vec<usize>,
    order: Order,
}

impl UnionLattice<SubsetMask> {
    pub fn from_family(f: &SetFamily) -> Result<Self, LatticeError> {
        UnionLattice::build(f.sets().to_vec())
    }
}

impl<T: AtomSet> UnionLattice<T> {
    pub fn build(sets: Vec<T>) -> Result<Self, LatticeError> {
        let mut gens: Vec<T> = Vec::new();
        for s in sets {
            if !gens.contains(&s) {
                gens.push(s);
            }
        }
        let Some(first) = gens.first() else {
            return Err(LatticeError::CoTrivialFamily);
        };
        let bottom = gens.iter().skip(1).fold(first.clone(), |a, b| a.intersection(b));
        if gens.contains(&bottom) {
            return Err(LatticeError::CoTrivialFamily);
        }
        let mut all = gens.clone();
        let mut seen: std::collections::HashSet<T> = all.iter().cloned().collect();
        let mut frontier = 0;
        while frontier < all.len() {
            let x = all[frontier].clone();
            for i in 0..frontier {
                let y = all[i].union(&x);
                if seen.insert(y.clone()) {
                    all.push(y);
                }
            }
            frontier += 1;
        }
        all.push(bottom);
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<T, usize> = all.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let order = Order::from_leq(all.len(), |i, j| all[i].is_subset(&all[j]));
        Ok(UnionLattice {
            nodes: all,
            index,
            generators,
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

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.order.top()
    }

    pub fn bottom_set(&self) -> &T {
        &self.nodes[0]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn to_abstract(&self) -> AbstractLattice {
        AbstractLattice::from_order(self.order.clone())
    }
}
