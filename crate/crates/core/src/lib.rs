//! Exact computation engine for lattice-valued subgroups of finite groups.
//!
//! The crate models finite bounded lattices and finite groups explicitly,
//! builds lattice-valued subsets on top of them, and implements conjugation
//! by L-points, set products, generated L-subgroups, normality, and two
//! normalizer constructions. The `verify` module runs randomized law suites
//! over seeded instances and emits machine-readable reports.

pub mod conjugacy;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod lattice;
pub mod lsubset;
pub mod normality;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use group::{EltSet, FiniteGroup, GElt, GroupHom};
pub use lattice::{Lattice, LatticeElt};
pub use lsubset::{LPoint, LSubset};
