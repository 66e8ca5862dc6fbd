//! Möbius values on lattices and the generalised Möbius function of a
//! configuration.

use thiserror::Error;

use crate::lattice::{IntersectionLattice, Order, UnionLattice};
use crate::subset::{superset_mobius, AtomSet, Config, IntFunc, SubsetError, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobiusError {
    #[error("the configuration is not a downset")]
    NotDownset,
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

impl MobiusError {
    pub fn name(&self) -> &'static str {
        match self {
            MobiusError::NotDownset => "NotADownsetError",
            MobiusError::Subset(e) => e.name(),
        }
    }
}

/// `μ(U, top)` for every node `U`.
pub fn mobius_to_top(o: &Order) -> Vec<i64> {
    let mut mu = vec![0i64; o.len()];
    for &u in o.linear_extension().iter().rev() {
        mu[u] = if u == o.top() {
            1
        } else {
            -o.strictly_above(u).iter().map(|&v| mu[v]).sum::<i64>()
        };
    }
    mu
}

/// `μ(bottom, U)` for every node `U`.
pub fn mobius_from_bottom(o: &Order) -> Vec<i64> {
    let mut mu = vec![0i64; o.len()];
    for &u in o.linear_extension() {
        mu[u] = if u == o.bottom() {
            1
        } else {
            -o.strictly_below(u).iter().map(|&v| mu[v]).sum::<i64>()
        };
    }
    mu
}

/// Nodes below the top with nonzero Möbius value.
pub fn nci<T: AtomSet>(l: &IntersectionLattice<T>) -> Vec<usize> {
    let mu = mobius_to_top(l.order());
    (0..l.top()).filter(|&i| mu[i] != 0).collect()
}

/// All nodes below the top.
pub fn nti<T: AtomSet>(l: &IntersectionLattice<T>) -> Vec<usize> {
    (0..l.top()).collect()
}

/// Nodes above the bottom with nonzero Möbius value.
pub fn ncu<T: AtomSet>(l: &UnionLattice<T>) -> Vec<usize> {
    let mu = mobius_from_bottom(l.order());
    (1..l.len()).filter(|&i| mu[i] != 0).collect()
}

/// `μ̂(X) = Σ_{Y ⊇ X, Y ∈ c} (-1)^{|Y∖X|}`.
pub fn generalized_mobius(c: &Config) -> Result<IntFunc, SubsetError> {
    superset_mobius(&c.indicator())
}

/// Direct evaluation of the recurrence `μ̂(X) = [X ∈ c] - Σ_{Y ⊋ X} μ̂(Y)`,
/// quadratic in the size of the Boolean lattice.
pub fn generalized_mobius_naive(c: &Config) -> IntFunc {
    let n = c.n();
    let full = SubsetMask::full(n);
    let mut f = IntFunc::zero(c.universe());
    let mut order: Vec<SubsetMask> = full.subsets().collect();
    order.sort_by_key(|m| std::cmp::Reverse(m.len()));
    for x in order {
        let above: i32 = full
            .difference(x)
            .subsets()
            .filter(|d| !d.is_empty())
            .map(|d| f.get(x.union(d)))
            .sum();
        f.set(x, i32::from(c.contains(x)) - above);
    }
    f
}

/// Subsets with nonzero generalised Möbius value.
pub fn ncpd(c: &Config) -> Result<Vec<SubsetMask>, SubsetError> {
    Ok(generalized_mobius(c)?.support())
}

/// Members of the downset with zero generalised Möbius value.
pub fn ntz(i: &Config) -> Result<Vec<SubsetMask>, MobiusError> {
    if !i.is_downset() {
        return Err(MobiusError::NotDownset);
    }
    let mu = generalized_mobius(i)?;
    Ok(i.members().into_iter().filter(|&x| mu.get(x) == 0).collect())
}

/// Minimal members of `ntz(i)` strictly above `x`.
pub fn ntcz(i: &Config, x: SubsetMask) -> Result<Vec<SubsetMask>, MobiusError> {
    let zeros = ntz(i)?;
    Ok(covering_zeros(&zeros, x))
}

fn covering_zeros(zeros: &[SubsetMask], x: SubsetMask) -> Vec<SubsetMask> {
    let above: Vec<SubsetMask> = zeros.iter().copied().filter(|&z| x.is_subset(z) && z != x).collect();
    above
        .iter()
        .copied()
        .filter(|&z| !above.iter().any(|&w| w != z && w.is_subset(z)))
        .collect()
}

/// Whether `|ntcz(i, x)| <= k` for every subset `x`.
pub fn is_k_decomposable(i: &Config, k: usize) -> Result<bool, MobiusError> {
    let zeros = ntz(i)?;
    Ok(i.universe()
        .full_mask()
        .subsets()
        .all(|x| covering_zeros(&zeros, x).len() <= k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{AbstractLattice, SetFamily};
    use crate::subset::Universe;

    #[test]
    fn chain_values() {
        let o = AbstractLattice::new(3, &[(0, 1), (1, 2)], 2, 0).unwrap();
        assert_eq!(mobius_to_top(o.order()), vec![0, -1, 1]);
        assert_eq!(mobius_from_bottom(o.order()), vec![1, -1, 0]);
    }

    #[test]
    fn two_tier_values() {
        let f = SetFamily::from_words(&["ad", "bd", "cd"]).unwrap();
        let l = IntersectionLattice::from_family(&f).unwrap();
        assert_eq!(mobius_to_top(l.order()), vec![2, -1, -1, -1, 1]);
        assert_eq!(nci(&l), vec![0, 1, 2, 3]);
        assert_eq!(nti(&l), vec![0, 1, 2, 3]);
    }

    #[test]
    fn boolean_mobius_of_full_lattice() {
        let u = Universe::numbered(1).unwrap();
        let mu = generalized_mobius(&Config::full(&u)).unwrap();
        assert_eq!(mu.values(), &[0, 1]);
        assert_eq!(ntz(&Config::full(&u)).unwrap(), vec![SubsetMask(0)]);
    }

    #[test]
    fn principal_downset_is_its_own_witness() {
        let u = Universe::numbered(3).unwrap();
        let c = Config::principal(&u, SubsetMask(0b101));
        assert_eq!(ncpd(&c).unwrap(), vec![SubsetMask(0b101)]);
    }

    #[test]
    fn ntz_rejects_non_downsets() {
        let u = Universe::numbered(2).unwrap();
        let c = Config::from_masks(&u, [SubsetMask(3)]).unwrap();
        assert_eq!(ntz(&c), Err(MobiusError::NotDownset));
    }

    #[test]
    fn naive_matches_transform_small() {
        let u = Universe::numbered(3).unwrap();
        for bits in 0u32..256 {
            let c = Config::from_masks(&u, (0..8).filter(|i| bits >> i & 1 == 1).map(SubsetMask)).unwrap();
            assert_eq!(generalized_mobius(&c).unwrap(), generalized_mobius_naive(&c));
        }
    }
}
