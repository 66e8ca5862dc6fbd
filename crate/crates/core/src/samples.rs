//! Small reference instances: the lattices `L1`..`L5`, a configuration of
//! `B_4`, and witness trees over them.

use std::sync::Arc;

use crate::expr::{parse, BaseCatalog, WitnessTree};
use crate::lattice::{AbstractLattice, IntersectionLattice, SetFamily};
use crate::subset::{Config, SubsetMask, Universe};

/// Nodes of [`l1_abstract`], in index order.
pub const L1_NODES: [&str; 5] = ["12N", "6N", "2N", "3N", "N2∪N3"];

/// Multiples of 2, of 3 and of 12 as an abstract lattice: bottom `12N`,
/// then `6N`, the two generators, and their union on top.
pub fn l1_abstract() -> AbstractLattice {
    AbstractLattice::new(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)], 4, 0).expect("valid lattice")
}

/// The same three families cut down to `0..12`, which keeps the lattice
/// shape.
pub fn l1_window() -> SetFamily {
    let u = Universe::numbered(12).expect("small universe");
    let multiples = |k: usize| (0..12).filter(|i| i % k == 0).fold(SubsetMask::EMPTY, |m, i| m.with(i));
    SetFamily::new(&u, [multiples(2), multiples(3), multiples(12)]).expect("in range")
}

/// `{ad, bd, cd}`.
pub fn l2() -> SetFamily {
    SetFamily::from_words(&["ad", "bd", "cd"]).expect("valid")
}

/// `{ab, ac, bc, d}`.
pub fn l3() -> SetFamily {
    SetFamily::from_words(&["ab", "ac", "bc", "d"]).expect("valid")
}

/// `{acdg, abdf, abce, ah}`.
pub fn l4() -> SetFamily {
    SetFamily::from_words(&["acdg", "abdf", "abce", "ah"]).expect("valid")
}

pub const L5_LABELS: [&str; 12] = ["a", "b", "b'", "c", "c'", "d", "e", "e'", "f", "f'", "g", "g'"];

/// The seven-set tight family whose lattice has thirteen nodes.
pub fn l5() -> SetFamily {
    let sets: [&[&str]; 7] = [
        &["a", "g"],
        &["a", "b", "c", "e"],
        &["a", "b'", "c", "f"],
        &["a", "b", "b'", "d"],
        &["a", "b", "c'", "f'"],
        &["a", "b'", "c'", "e'"],
        &["a", "g'"],
    ];
    SetFamily::from_labels(&L5_LABELS, &sets).expect("valid")
}

/// The intersection `{abd, abce, acf}` with its single cancelling term.
pub fn three_sets() -> SetFamily {
    SetFamily::from_words(&["abd", "abce", "acf"]).expect("valid")
}

/// Catalog of the given sets, in order, and a tree over it in text form.
pub fn tree_over(u: &Arc<Universe>, leaves: &[&[&str]], text: &str) -> (BaseCatalog<SubsetMask>, WitnessTree) {
    let entries = leaves
        .iter()
        .map(|l| u.mask_of(l).expect("known labels"))
        .collect::<Vec<_>>();
    let names = entries.iter().map(|&m| u.labels_of(m).concat()).collect();
    (
        BaseCatalog::with_names(SubsetMask::EMPTY, entries, names),
        parse(text).expect("valid tree"),
    )
}

fn chars(w: &str) -> Vec<String> {
    w.chars().map(|c| c.to_string()).collect()
}

fn word_tree(f: &SetFamily, words: &[&str], text: &str) -> (BaseCatalog<SubsetMask>, WitnessTree) {
    let owned: Vec<Vec<String>> = words.iter().map(|w| chars(w)).collect();
    let refs: Vec<Vec<&str>> = owned.iter().map(|v| v.iter().map(String::as_str).collect()).collect();
    let leaves: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
    tree_over(f.universe(), &leaves, text)
}

/// `(ad ∖ d) ⊔ (bd ∖ d) ⊔ cd` over `l2`.
pub fn l2_witness() -> (BaseCatalog<SubsetMask>, WitnessTree) {
    word_tree(&l2(), &["ad", "bd", "cd", "d"], "(du (sc L0 L3) (sc L1 L3) L2)")
}

/// `a ⊔ b ⊔ c ⊔ d` over `l3`.
pub fn l3_witness() -> (BaseCatalog<SubsetMask>, WitnessTree) {
    word_tree(&l3(), &["a", "b", "c", "d"], "(du L0 L1 L2 L3)")
}

/// Over `{ac, bc, c}`: `(ac ∖ c) ⊔ bc`.
pub fn t0() -> (SetFamily, BaseCatalog<SubsetMask>, WitnessTree) {
    let f = SetFamily::from_words(&["ac", "bc"]).expect("valid");
    let (c, t) = word_tree(&f, &["ac", "bc", "c"], "(du (sc L0 L2) L1)");
    (f, c, t)
}

/// Over `{ac, bc, c}`: `(ac ∖ c) ⊔ (bc ∖ c) ⊔ c`.
pub fn t0_prime() -> (SetFamily, BaseCatalog<SubsetMask>, WitnessTree) {
    let f = SetFamily::from_words(&["ac", "bc"]).expect("valid");
    let (c, t) = word_tree(&f, &["ac", "bc", "c"], "(du (sc L0 L2) (sc L1 L2) L2)");
    (f, c, t)
}

const L4_LEAVES: [&str; 7] = ["acdg", "abdf", "abce", "ah", "ad", "ac", "ab"];

/// Over `l4`: `(acdg ∖ ac) ⊔ (abdf ∖ ad) ⊔ (abce ∖ ab) ⊔ ah`.
pub fn t1() -> (BaseCatalog<SubsetMask>, WitnessTree) {
    word_tree(&l4(), &L4_LEAVES, "(du (sc L0 L5) (sc L1 L4) (sc L2 L6) L3)")
}

/// Left-linear witness over `l4`.
pub fn t1_prime() -> (BaseCatalog<SubsetMask>, WitnessTree) {
    word_tree(&l4(), &L4_LEAVES, "(du (sc (du (sc (du (sc L0 L5) L2) L6) L3) L4) L1)")
}

/// Left-linear witness over `l3`, the image of [`t1_prime`].
pub fn t2() -> (BaseCatalog<SubsetMask>, WitnessTree) {
    word_tree(
        &l3(),
        &["ab", "ac", "bc", "d", "a", "b", "c"],
        "(du (sc (du (sc (du (sc L0 L5) L2) L6) L3) L4) L1)",
    )
}

/// Isomorphism from the lattice of `l3` to that of `l4` matching the
/// drawings: `ab↔acdg`, `ac↔abdf`, `bc↔abce`, `d↔ah`, `a↔ad`, `b↔ac`,
/// `c↔ab`, `∅↔a`. Pairs are given as words.
pub const L3_TO_L4: [(&str, &str); 9] = [
    ("", "a"),
    ("a", "ad"),
    ("b", "ac"),
    ("c", "ab"),
    ("d", "ah"),
    ("ab", "acdg"),
    ("ac", "abdf"),
    ("bc", "abce"),
    ("abcd", "abcdefgh"),
];

/// The twelve-step left-linear witness over `l5`, innermost first.
pub fn l5_witness() -> (BaseCatalog<SubsetMask>, WitnessTree) {
    let f = l5();
    let leaves: [&[&str]; 11] = [
        &["a", "b", "c", "e"],
        &["a", "b"],
        &["a", "b", "c'", "f'"],
        &["a", "c'"],
        &["a", "g"],
        &["a", "c"],
        &["a", "b'", "c", "f"],
        &["a", "b'"],
        &["a", "g'"],
        &["a", "b", "b'", "d"],
        &["a", "b'", "c'", "e'"],
    ];
    tree_over(
        f.universe(),
        &leaves,
        "(du (sc (du (sc (du (sc (du (sc (du (sc (du (sc L0 L1) L2) L3) L4) L5) L6) L7) L8) L1) L9) L7) L10)",
    )
}

/// The configuration `{0, 1, 01, 03, 12, 13, 013, 123}` of `B_4`.
pub fn b4_config() -> Config {
    let u = Universe::numbered(4).expect("small universe");
    let masks = ["0", "1", "01", "03", "12", "13", "013", "123"].map(|w| u.mask_of(&chars(w)).expect("known labels"));
    Config::from_masks(&u, masks).expect("in range")
}

/// Intermediate values of [`l5_witness`], innermost first.
pub const L5_STEPS: [&str; 12] = [
    "ce",
    "abcec'f'",
    "bcef'",
    "abcef'g",
    "bef'g",
    "abb'ceff'g",
    "bceff'g",
    "abceff'gg'",
    "ceff'gg'",
    "abb'cdeff'gg'",
    "bcdeff'gg'",
    "abb'cc'dee'ff'gg'",
];

/// Splits words such as `ab'c` into primed labels.
pub fn primed_labels(w: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for ch in w.chars() {
        if ch == '\'' {
            if let Some(last) = out.last_mut() {
                last.push('\'');
            }
        } else {
            out.push(ch.to_string());
        }
    }
    out
}

/// [`L3_TO_L4`] as a node map between the two lattices.
pub fn l3_to_l4_iso(a: &IntersectionLattice, b: &IntersectionLattice) -> Vec<usize> {
    let (u3, u4) = (l3().universe().clone(), l4().universe().clone());
    let mut iso = vec![usize::MAX; a.len()];
    for (w3, w4) in L3_TO_L4 {
        let x = u3.mask_of(&chars(w3)).expect("known labels");
        let y = u4.mask_of(&chars(w4)).expect("known labels");
        iso[a.index_of(&x).expect("node of l3")] = b.index_of(&y).expect("node of l4");
    }
    iso
}
