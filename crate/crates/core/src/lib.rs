//! Non-cancelling intersections: intersection lattices, Möbius values,
//! dot-algebra witnesses, constructive rewrites and counterexample search.

pub mod bridge;
pub mod constructive;
pub mod expr;
pub mod json;
pub mod lattice;
pub mod mobius;
pub mod samples;
pub mod search;
pub mod subset;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    pub mod lattices {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    pub mod witnesses {}
    #[doc = include_str!("../../../book/src/downsets.md")]
    pub mod downsets {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/bridge.md")]
    pub mod bridge {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
