//! Finite permutation groups, their subgroup lattices, and the embedding
//! properties built on them: s-permutability, formation hypercenters,
//! and quasinormality relative to the formations of nilpotent, supersoluble
//! and soluble groups.

pub mod arith;
pub mod bitset;
pub mod builtin;
pub mod error;
pub mod formations;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod quasinormal;
pub mod structure;
pub mod table;

pub use builtin::builtin_group;
pub use error::{Error, Result, MAX_DEGREE, MAX_ORDER};
pub use formations::FormationId;
pub use group::{Group, Homomorphism};
pub use lattice::{Lattice, SubId, View};
pub use perm::Permutation;
pub use quasinormal::{SupplementClass, Verdict};
