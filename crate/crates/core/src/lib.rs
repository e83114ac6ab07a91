//! Exact Jordan constants for finite permutation groups.
//!
//! The crate computes, for explicit finite permutation groups, the minimal
//! index of a (normal) abelian subgroup, the constants J and J-bar, the
//! Chermak-Delgado maximal-measure lattice, and verifies the bundled case
//! ledger that re-derives the plane Cremona group constants 7200, 120, 20,
//! 60 and 12 from witness groups.
//!
//! Groups are built from a small expression language (`dsl`), from the
//! bundled catalog of witness groups (`catalog`), or programmatically
//! (`construct`). All heavy operations take an [`config::EngineConfig`]
//! carrying the enumeration caps.

pub mod bitset;
pub mod catalog;
pub mod config;
pub mod construct;
pub mod dsl;
pub mod error;
pub mod group;
pub mod hom;
pub mod jordan;
pub mod ledger;
pub mod naive;
pub mod ops;
pub mod perm;
pub mod report;
pub mod subgroups;

pub use config::EngineConfig;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
