//! Finite lattices: abstract Hasse diagrams, intersection lattices of set
//! families, and union lattices.

mod family;
mod intersection;
mod union;

pub use family::{complement_family, dualize_family, tightify, SetFamily};
pub use intersection::IntersectionLattice;
pub use union::UnionLattice;

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the family is trivial: its union is one of its members")]
    TrivialFamily,
    #[error("the family is co-trivial: its intersection is one of its members")]
    CoTrivialFamily,
    #[error("a lattice with a single node has nothing below its top")]
    DegenerateLattice,
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("{0} atoms exceed the universe limit")]
    TooManyAtoms(usize),
    #[error(transparent)]
    Subset(#[from] crate::subset::SubsetError),
}

impl LatticeError {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeError::TrivialFamily => "TrivialFamilyError",
            LatticeError::CoTrivialFamily => "CoTrivialFamilyError",
            LatticeError::DegenerateLattice => "DegenerateLatticeError",
            LatticeError::NotALattice(_) => "NotALatticeError",
            LatticeError::TooManyAtoms(_) => "TooManyAtomsError",
            LatticeError::Subset(e) => e.name(),
        }
    }
}

/// A finite bounded poset given by its cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    topo: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl Order {
    /// Builds the order from a reflexive `leq` predicate on `0..m`. The
    /// caller guarantees a partial order with a top and a bottom.
    pub fn from_leq(m: usize, leq: impl Fn(usize, usize) -> bool) -> Order {
        let mut above = vec![Vec::new(); m];
        let mut below = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if i != j && leq(i, j) {
                    above[i].push(j);
                    below[j].push(i);
                }
            }
        }
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for i in 0..m {
            for &j in &above[i] {
                let covered = !above[i].iter().any(|&k| k != j && leq(k, j));
                if covered {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        let mut topo: Vec<usize> = (0..m).collect();
        topo.sort_by_key(|&i| (below[i].len(), i));
        let top = *topo.last().unwrap_or(&0);
        let bottom = *topo.first().unwrap_or(&0);
        Order {
            up,
            down,
            above,
            below,
            topo,
            top,
            bottom,
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Upper covers of `i`.
    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn covers_down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// Elements strictly above `i`.
    pub fn strictly_above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn strictly_below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.above[i].contains(&j)
    }

    /// A linear extension, bottom first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// All `(child, parent)` cover pairs.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (i, ps) in self.up.iter().enumerate() {
            for &p in ps {
                v.push((i, p));
            }
        }
        v
    }

    pub fn reversed(&self) -> Order {
        Order::from_leq(self.len(), |i, j| self.leq(j, i))
    }

    /// Length of the longest chain from the bottom.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.len()];
        for &i in &self.topo {
            for &j in &self.up[i] {
                r[j] = r[j].max(r[i] + 1);
            }
        }
        r
    }

    /// An order isomorphism `self → other`, if one exists.
    pub fn isomorphism(&self, other: &Order) -> Option<Vec<usize>> {
        let m = self.len();
        if m != other.len() {
            return None;
        }
        let sig = |o: &Order| -> Vec<(usize, usize, usize, usize, usize)> {
            let r = o.ranks();
            let h = o.reversed().ranks();
            (0..o.len())
                .map(|i| (r[i], h[i], o.up[i].len(), o.down[i].len(), o.above[i].len()))
                .collect()
        };
        let (sa, sb) = (sig(self), sig(other));
        let mut ka = sa.clone();
        let mut kb = sb.clone();
        ka.sort();
        kb.sort();
        if ka != kb {
            return None;
        }
        let order: Vec<usize> = self.topo.clone();
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        fn go(
            k: usize,
            order: &[usize],
            a: &Order,
            b: &Order,
            sa: &[(usize, usize, usize, usize, usize)],
            sb: &[(usize, usize, usize, usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let i = order[k];
            for j in 0..b.len() {
                if used[j] || sa[i] != sb[j] {
                    continue;
                }
                let ok = order[..k].iter().all(|&p| {
                    let q = map[p];
                    a.leq(p, i) == b.leq(q, j) && a.leq(i, p) == b.leq(j, q)
                });
                if !ok {
                    continue;
                }
                map[i] = j;
                used[j] = true;
                if go(k + 1, order, a, b, sa, sb, map, used) {
                    return true;
                }
                used[j] = false;
                map[i] = usize::MAX;
            }
            false
        }
        if go(0, &order, self, other, &sa, &sb, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    /// Whether `map` is an order isomorphism `self → other`.
    pub fn is_isomorphism(&self, other: &Order, map: &[usize]) -> bool {
        let m = self.len();
        if other.len() != m || map.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &j in map {
            if j >= m || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        (0..m).all(|i| (0..m).all(|k| self.leq(i, k) == other.leq(map[i], map[k])))
    }

    /// Graphviz rendering of the Hasse diagram, top at the top.
    pub fn to_dot(&self, labels: &[String], mobius: Option<&[i64]>, highlight: &[usize]) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for i in 0..self.len() {
            let mut attrs = format!("label=\"{}\"", escape(&labels[i]));
            if let Some(mu) = mobius {
                let _ = write!(attrs, ", xlabel=\"{}\"", mu[i]);
            }
            if highlight.contains(&i) {
                attrs.push_str(", style=filled, fillcolor=orange");
            }
            let _ = writeln!(s, "  n{i} [{attrs}];");
        }
        for (c, p) in self.cover_pairs() {
            let _ = writeln!(s, "  n{c} -> n{p} [arrowhead=none];");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A lattice given only by its Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractLattice {
    order: Order,
}

impl AbstractLattice {
    /// `covers` lists `(child, parent)` pairs. Redundant (transitive) edges
    /// are dropped.
    pub fn new(
        nodes: usize,
        covers: &[(usize, usize)],
        top: usize,
        bottom: usize,
    ) -> Result<AbstractLattice, LatticeError> {
        if nodes <= 1 {
            return Err(LatticeError::DegenerateLattice);
        }
        if top >= nodes || bottom >= nodes {
            return Err(LatticeError::NotALattice("top or bottom out of range".into()));
        }
        let mut adj = vec![Vec::new(); nodes];
        for &(c, p) in covers {
            if c >= nodes || p >= nodes {
                return Err(LatticeError::NotALattice(format!("edge ({c},{p}) out of range")));
            }
            adj[c].push(p);
        }
        // reach[i][j]: j reachable from i by a path of length >= 0
        let mut reach = vec![vec![false; nodes]; nodes];
        for i in 0..nodes {
            let mut stack = vec![i];
            reach[i][i] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if y == i {
                        return Err(LatticeError::NotALattice("cycle in cover relation".into()));
                    }
                    if !reach[i][y] {
                        reach[i][y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        for i in 0..nodes {
            if !reach[i][top] {
                return Err(LatticeError::NotALattice(format!("node {i} is not below the top")));
            }
            if !reach[bottom][i] {
                return Err(LatticeError::NotALattice(format!("node {i} is not above the bottom")));
            }
        }
        for i in 0..nodes {
            for j in 0..i {
                let ub: Vec<usize> = (0..nodes).filter(|&k| reach[i][k] && reach[j][k]).collect();
                let least = ub.iter().any(|&k| ub.iter().all(|&l| reach[k][l]));
                if !least {
                    return Err(LatticeError::NotALattice(format!("nodes {j} and {i} have no join")));
                }
                let lb: Vec<usize> = (0..nodes).filter(|&k| reach[k][i] && reach[k][j]).collect();
                let greatest = lb.iter().any(|&k| lb.iter().all(|&l| reach[l][k]));
                if !greatest {
                    return Err(LatticeError::NotALattice(format!("nodes {j} and {i} have no meet")));
                }
            }
        }
        let order = Order::from_leq(nodes, |i, j| reach[i][j]);
        Ok(AbstractLattice { order })
    }

    pub fn from_order(order: Order) -> AbstractLattice {
        AbstractLattice { order }
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn top(&self) -> usize {
        self.order.top()
    }

    pub fn bottom(&self) -> usize {
        self.order.bottom()
    }

    pub fn reversed(&self) -> AbstractLattice {
        AbstractLattice {
            order: self.order.reversed(),
        }
    }
}

/// Order isomorphism between two lattices, if any.
pub fn lattice_isomorphic(a: &Order, b: &Order) -> Option<Vec<usize>> {
    a.isomorphism(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> AbstractLattice {
        AbstractLattice::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], 3, 0).unwrap()
    }

    #[test]
    fn abstract_lattice_validation() {
        assert_eq!(AbstractLattice::new(1, &[], 0, 0), Err(LatticeError::DegenerateLattice));
        assert!(matches!(
            AbstractLattice::new(3, &[(0, 1), (1, 0), (1, 2)], 2, 0),
            Err(LatticeError::NotALattice(_))
        ));
        // two minimal elements below two maximal ones: no join for 1,2
        let bowtie = AbstractLattice::new(
            6,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
            5,
            0,
        );
        assert!(matches!(bowtie, Err(LatticeError::NotALattice(_))));
        let d = diamond();
        assert_eq!(d.order().covers_up(0), &[1, 2]);
    }

    #[test]
    fn transitive_edges_are_dropped() {
        let l = AbstractLattice::new(3, &[(0, 1), (1, 2), (0, 2)], 2, 0).unwrap();
        assert_eq!(l.order().cover_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn isomorphism_finds_relabelling() {
        let a = diamond();
        let b = AbstractLattice::new(4, &[(3, 0), (3, 1), (0, 2), (1, 2)], 2, 3).unwrap();
        let map = lattice_isomorphic(a.order(), b.order()).unwrap();
        assert!(a.order().is_isomorphism(b.order(), &map));
        let chain = AbstractLattice::new(4, &[(0, 1), (1, 2), (2, 3)], 3, 0).unwrap();
        assert!(lattice_isomorphic(a.order(), chain.order()).is_none());
    }
}
