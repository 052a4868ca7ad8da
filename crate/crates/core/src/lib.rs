//! Splittings of finite abelian groups by multiplier sets, with the
//! semi-cross lattice tilings they induce.
//!
//! A set `M` of nonzero integers splits `G` when some `S ⊆ G` gives every
//! nonzero element a unique representation `m·s`. The crate verifies and
//! classifies such splittings, searches for splitter sets by exact cover,
//! scans the purely singular orders of `S(k) = {1, …, k}`, builds the kernel
//! lattice tiling `Z^n` by the semi-cross, and evaluates the counting
//! identities used to rule out nontrivial purely singular splittings.

pub mod checks;
pub mod error;
pub mod format;
pub mod group;
pub mod scan;
pub mod splitting;
pub mod tiling;

pub use error::{Error, Result};
