//! The narrative guide, mirrored from `book/`.
//!
//! Each module's documentation is one chapter of the mdBook under `book/`,
//! included verbatim. `cargo test --doc` therefore compiles and runs every
//! code sample the book shows, keeping guide and library in lockstep.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/spectral-data.md")]
pub mod spectral_data {}

#[doc = include_str!("../../../book/src/quasipolynomials.md")]
pub mod quasipolynomials {}

#[doc = include_str!("../../../book/src/minimality.md")]
pub mod minimality_guide {}

#[doc = include_str!("../../../book/src/controllability.md")]
pub mod controllability_tests {}

#[doc = include_str!("../../../book/src/attainable-sets.md")]
pub mod attainable_sets {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_and_models {}
