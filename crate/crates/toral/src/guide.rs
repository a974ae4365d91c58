//! Mirrors of the guide chapters in `book/src/`, attached as doc comments
//! so `cargo test` compiles and runs every Rust block the guide shows.
//! This module only exists while rustdoc collects doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}

#[doc = include_str!("../../../book/src/period_sets.md")]
pub mod period_sets {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/nielsen.md")]
pub mod fixed_point_counts {}

#[doc = include_str!("../../../book/src/lattice_oracle.md")]
pub mod lattice_oracle {}

#[doc = include_str!("../../../book/src/conjugacy.md")]
pub mod conjugacy_mod_n {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod command_line {}
