//! Antichains of `B_n` up to relabelling, downsets, all configurations,
//! and seeded random families.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::SetFamily;
use crate::subset::{Config, SubsetMask, Universe};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// For each permutation of the elements, the induced map on masks.
fn mask_maps(n: usize) -> Vec<Vec<u32>> {
    permutations(n)
        .into_iter()
        .map(|p| {
            (0..1u32 << n)
                .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).fold(0, |acc, i| acc | 1 << p[i]))
                .collect()
        })
        .collect()
}

fn image(list: &[SubsetMask], map: &[u32]) -> Vec<SubsetMask> {
    let mut v: Vec<SubsetMask> = list.iter().map(|m| SubsetMask(map[m.0 as usize])).collect();
    v.sort_unstable();
    v
}

/// Lexicographically least sorted mask list over all relabellings of the
/// `n` elements.
pub fn canonical_form(sets: &[SubsetMask], n: usize) -> Vec<SubsetMask> {
    mask_maps(n).iter().map(|m| image(sets, m)).min().unwrap_or_default()
}

fn is_canonical(sorted: &[SubsetMask], maps: &[Vec<u32>]) -> bool {
    maps.iter().all(|m| image(sorted, m).as_slice() >= sorted)
}

/// Calls `f` on every antichain of `B_n` as a sorted mask list.
fn for_each_antichain(n: usize, mut f: impl FnMut(&[SubsetMask])) {
    fn go(next: u32, end: u32, cur: &mut Vec<SubsetMask>, f: &mut dyn FnMut(&[SubsetMask])) {
        f(cur);
        for m in next..end {
            let x = SubsetMask(m);
            if cur.iter().all(|&y| !x.is_subset(y) && !y.is_subset(x)) {
                cur.push(x);
                go(m + 1, end, cur, f);
                cur.pop();
            }
        }
    }
    go(0, 1 << n, &mut Vec::new(), &mut f);
}

/// One antichain per orbit under relabelling, in canonical form, sorted by
/// size and then lexicographically.
pub fn sperner_families(n: usize) -> Vec<Vec<SubsetMask>> {
    assert!(n <= 6, "antichain enumeration is capped at n = 6");
    let maps = mask_maps(n);
    let mut out = Vec::new();
    for_each_antichain(n, |a| {
        if is_canonical(a, &maps) {
            out.push(a.to_vec());
        }
    });
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every downset of `B_n` exactly once, as the closure of an antichain.
pub fn enumerate_downsets(n: usize) -> Vec<Config> {
    assert!(n <= 6, "downset enumeration is capped at n = 6");
    let u = Universe::numbered(n).expect("small universe");
    let mut out = Vec::new();
    for_each_antichain(n, |a| {
        let c = Config::from_masks(&u, a.iter().copied()).expect("in range");
        out.push(c.downset_closure());
    });
    out
}

/// Every configuration of `B_n`, in order of the bit pattern.
pub fn all_configs(n: usize) -> impl Iterator<Item = Config> {
    assert!(n <= 4, "configuration enumeration is capped at n = 4");
    let u = Universe::numbered(n).expect("small universe");
    let m = 1u32 << n;
    (0..1u64 << m).map(move |bits| {
        Config::from_masks(&u, (0..m).filter(|i| bits >> i & 1 == 1).map(SubsetMask)).expect("in range")
    })
}

/// A non-trivial family of distinct random subsets of `{0..n}` whose size
/// is drawn from `count`. The same seed gives the same family.
pub fn random_family(n: usize, count: RangeInclusive<usize>, seed: u64) -> SetFamily {
    assert!((1..=24).contains(&n), "universe size must be 1..=24");
    assert!(*count.start() >= 2, "a non-trivial family needs two sets");
    let u = Universe::numbered(n).expect("small universe");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(count.clone());
        let sets: Vec<SubsetMask> = (0..k).map(|_| SubsetMask(rng.gen_range(0..1u32 << n))).collect();
        let f = SetFamily::new(&u, sets).expect("in range");
        if f.len() == k && !f.is_trivial() {
            return f;
        }
    }
}
