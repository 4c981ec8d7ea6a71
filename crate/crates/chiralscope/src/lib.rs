//! chiralscope: chirality analysis for finite permutation groups.
//!
//! The crate decides when a pair of group elements `(x, t)` yields a chiral
//! rank-3 polyhedron (a rotary map with no orientation-reversing symmetry),
//! enumerates and counts such pairs in groups of desk scale, builds the
//! corresponding coset polyhedra with their flag graphs, and verifies
//! involution-counting inequalities for the finite groups of Lie type with
//! exact integer arithmetic.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability. The `chiralscope` binary exposes the same operations as
//! batch subcommands (`verify`, `count`, `build`, `search`, `bounds`,
//! `corpus`).

pub mod bounds;
pub mod chirality;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod group;
pub mod perm;
pub mod polytope;
pub mod report;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
