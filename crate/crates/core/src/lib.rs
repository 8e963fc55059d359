//! Exact subgroup-order sums `σ₁(G) = Σ_{H≤G} |H| / |G|` for small finite
//! permutation groups, together with the lattice, classifier and arithmetic
//! machinery used to check bounds on them.

pub mod arith;
pub mod bitset;
pub mod classify;
pub mod config;
pub mod constructions;
pub mod error;
pub mod group;
pub mod invariants;
pub mod iso;
pub mod lattice;
pub mod perm;
pub mod products;
pub mod rational;
pub mod verify;

pub use bitset::ElementSet;
pub use constructions::build;
pub use error::{Error, Result};
pub use group::Group;
pub use invariants::{sigma1, sigma1_breakdown, Sigma1Breakdown};
pub use lattice::{all_subgroups, Subgroup, SubgroupLattice};
pub use perm::Permutation;
pub use rational::Rational;
