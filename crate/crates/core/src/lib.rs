//! Separability and separable-stability tools for free products of
//! closed-surface groups and free groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`group`]: words, Dehn reduction in surface factors, free-product normal
//!   forms, conjugacy-class enumeration.
//! * [`whitehead`]: Whitehead graphs of conjugacy classes, built both
//!   combinatorially and from sampled limit-set data, with strong
//!   connectivity and strong cutpoint analysis.
//! * [`separability`]: Whitehead automorphisms, peak reduction and
//!   separability verdicts.
//! * [`hyperbolic`]: PSL(2,C) maps, upper half-space geometry and
//!   representations.
//! * [`stability`]: ping-pong certificates, orbit paths, quasi-geodesic
//!   estimates and the depth-bounded stability report.
//! * [`ingest`]: representation files, the example gallery, DOT and CSV.
//!
//! The guide in `book/` walks through each layer with runnable snippets.

pub mod group;
pub mod hyperbolic;
pub mod ingest;
pub mod separability;
pub mod stability;
pub mod whitehead;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/whitehead.md")]
    mod whitehead {}
    #[doc = include_str!("../../../book/src/separability.md")]
    mod separability {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/files.md")]
    mod files {}
}
