#![allow(clippy::needless_range_loop)]

pub mod git;
pub mod ledger;
pub mod luna;
pub mod motivic;
pub mod cyclotomic;
pub mod exact;
pub mod poly;
pub mod toric;
pub mod wps;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-kernel.md")]
    mod exact_kernel {}
    #[doc = include_str!("../../../book/src/symbolic-poly.md")]
    mod symbolic_poly {}
    #[doc = include_str!("../../../book/src/torus-git.md")]
    mod torus_git {}
    #[doc = include_str!("../../../book/src/wps-geometry.md")]
    mod wps_geometry {}
    #[doc = include_str!("../../../book/src/luna-3a2.md")]
    mod luna_3a2 {}
    #[doc = include_str!("../../../book/src/toric-quotient.md")]
    mod toric_quotient {}
    #[doc = include_str!("../../../book/src/motivic-ring.md")]
    mod motivic_ring {}
    #[doc = include_str!("../../../book/src/divisor-ledger.md")]
    mod divisor_ledger {}
}
