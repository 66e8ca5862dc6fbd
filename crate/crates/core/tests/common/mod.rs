#![allow(dead_code)]

use std::sync::Arc;

use nci_core::bridge::{embedding_agrees, family_to_downset};
use nci_core::constructive::eul_equiv_steps;
use nci_core::lattice::{IntersectionLattice, SetFamily};
use nci_core::mobius::{generalized_mobius, mobius_to_top};
use nci_core::subset::{dunion, scomp, superset_mobius, superset_zeta, Config, IntFunc, SubsetMask, Universe};

pub fn universe(n: usize) -> Arc<Universe> {
    Universe::numbered(n).unwrap()
}

/// The configuration of `B_n` whose members are the set bits of `bits`.
pub fn config(n: usize, bits: u64) -> Config {
    let u = universe(n);
    let masks = (0..1u32 << n).filter(|&m| bits >> m & 1 == 1).map(SubsetMask);
    Config::from_masks(&u, masks).unwrap()
}

/// Every non-trivial family of distinct subsets of `{0..n}`.
pub fn nontrivial_families(n: usize) -> impl Iterator<Item = SetFamily> {
    let u = universe(n);
    let m = 1u32 << n;
    (1u64..1 << m).filter_map(move |bits| {
        let f = SetFamily::new(&u, (0..m).filter(|&i| bits >> i & 1 == 1).map(SubsetMask)).unwrap();
        (!f.is_trivial()).then_some(f)
    })
}

/// `μ̂(C1 ⊔ C2) = μ̂(C1) + μ̂(C2)` for the disjoint pair `(a, b ∖ a)` and
/// `μ̂(C1 ∖̇ C2) = μ̂(C1) − μ̂(C2)` for the nested pair `(a ∪ b, b)`.
pub fn check_linearity(n: usize, a: u64, b: u64) -> Result<(), String> {
    let pairs = [
        (config(n, a), config(n, b & !a), 1),
        (config(n, a | b), config(n, b), -1),
    ];
    for (c1, c2, sign) in pairs {
        let joined = if sign == 1 { dunion(&c1, &c2) } else { scomp(&c1, &c2) }.ok_or("operation undefined")?;
        let (m, m1, m2) = (mu(&joined), mu(&c1), mu(&c2));
        for x in universe(n).full_mask().subsets() {
            if m.get(x) != m1.get(x) + sign * m2.get(x) {
                return Err(format!("{} and {} at {x}", c1.render(), c2.render()));
            }
        }
    }
    Ok(())
}

fn mu(c: &Config) -> IntFunc {
    generalized_mobius(c).unwrap()
}

/// `μ̂(X) = (−1)^{|X|} · χ(C ∩ F(X))` for every `X`.
pub fn check_mob_eul(n: usize, bits: u64) -> Result<(), String> {
    let c = config(n, bits);
    let m = mu(&c);
    for x in universe(n).full_mask().subsets() {
        let up = Config::principal_up(c.universe(), x);
        let euler: i64 = c
            .members()
            .into_iter()
            .filter(|y| up.contains(*y))
            .map(|y| y.parity_sign())
            .sum();
        if i64::from(m.get(x)) != x.parity_sign() * euler {
            return Err(format!("{} at {x}", c.render()));
        }
    }
    Ok(())
}

/// Zeta and Möbius transforms over `B_n` undo each other.
pub fn check_inversion(n: usize, values: Vec<i32>) -> Result<(), String> {
    let f = IntFunc::from_values(&universe(n), values).map_err(|e| e.to_string())?;
    let back = superset_mobius(&superset_zeta(&f).unwrap()).unwrap();
    let forth = superset_zeta(&superset_mobius(&f).unwrap()).unwrap();
    if back != f || forth != f {
        return Err("transforms do not invert".into());
    }
    Ok(())
}

/// `|∪F| = −Σ_{U ≠ top} μ(U, top)·|U|`.
pub fn check_counting_measure(f: &SetFamily) -> Result<(), String> {
    let l = IntersectionLattice::from_family(f).map_err(|e| e.to_string())?;
    let mu = mobius_to_top(l.order());
    let sum: i64 = (0..l.len())
        .filter(|&i| i != l.top())
        .map(|i| mu[i] * l.node(i).len() as i64)
        .sum();
    if l.top_set().len() as i64 != -sum {
        return Err(format!("{}: {} against {}", f.render(), l.top_set().len(), -sum));
    }
    Ok(())
}

pub fn check_embeds(f: &SetFamily) -> Result<(), String> {
    match embedding_agrees(f) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{}: ncpd differs from nci", f.render())),
        Err(e) => Err(format!("{}: {e}", f.render())),
    }
}

/// Greedily toggles members of `B_n` in `c` until its Euler characteristic
/// is `target`.
pub fn match_euler(c: &mut Config, target: i64) {
    for x in c.universe().full_mask().subsets() {
        let e = c.euler();
        if e == target {
            return;
        }
        let s = x.parity_sign();
        if c.contains(x) && (e - s - target).abs() < (e - target).abs() {
            c.remove(x);
        } else if !c.contains(x) && (e + s - target).abs() < (e - target).abs() {
            c.insert(x);
        }
    }
}

/// Every configuration of the trace from `c1` to `c2` inside `B_n` has
/// the Euler characteristic of `c1`.
pub fn check_euler_invariance(n: usize, a: u64, b: u64) -> Result<(), String> {
    let g = Config::full(&universe(n));
    let c1 = config(n, a);
    let mut c2 = config(n, b);
    match_euler(&mut c2, c1.euler());
    if c2.euler() != c1.euler() {
        return Err("could not match Euler characteristics".into());
    }
    let trace = eul_equiv_steps(&g, &c1, &c2).map_err(|e| e.to_string())?;
    let states = trace.replay().map_err(|e| e.to_string())?;
    if states.first() != Some(&c1) || states.last() != Some(&c2) {
        return Err("trace has the wrong ends".into());
    }
    if let Some(s) = states.iter().find(|s| s.euler() != c1.euler()) {
        return Err(format!("{} has Euler characteristic {}", s.render(), s.euler()));
    }
    Ok(())
}

/// The generalised Möbius values of a downset vanish outside it.
pub fn check_downset_support(n: usize, bits: u64) -> Result<(), String> {
    let i = config(n, bits).downset_closure();
    match mu(&i).support().into_iter().find(|&x| !i.contains(x)) {
        Some(x) => Err(format!("{}: nonzero at {x}", i.render())),
        None => Ok(()),
    }
}

/// The embedding downset of a family, if it is non-trivial.
pub fn embedding_downset(f: &SetFamily) -> Option<Config> {
    family_to_downset(f).ok().map(|e| e.downset)
}
