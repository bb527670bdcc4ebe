//! The chapters of the guide, compiled so `cargo test` runs every listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/charpoly.md")]
pub mod charpoly {}

#[doc = include_str!("../../../book/src/free-algebra.md")]
pub mod free_algebra {}

#[doc = include_str!("../../../book/src/generation.md")]
pub mod generation {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/conjugacy.md")]
pub mod conjugacy {}

#[doc = include_str!("../../../book/src/varieties.md")]
pub mod varieties {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
