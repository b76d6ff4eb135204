//! Finite set-theoretic solutions of the pentagon equation
//! `s₂₃ s₁₃ s₁₂ = s₁₂ s₂₃` with `s(x, y) = (x·y, θ_x(y))`.
//!
//! The crate verifies candidate tables, classifies their structure
//! (commutative, non-degenerate, involutive, ...), builds solutions from
//! groups, semigroups and cocycles, computes retractions, and enumerates all
//! commutative non-degenerate solutions on left-zero semigroups of small
//! size up to isomorphism.

pub mod algebra;
pub mod census;
pub mod construct;
pub mod error;
pub mod format;
pub mod group;
pub mod perm;
pub mod retraction;
pub mod solution;

pub use algebra::{Congruence, Semigroup};
pub use census::{census, enumerate_left_zero, CensusConfig, CensusResult};
pub use construct::GroupSpec;
pub use error::{Error, Result};
pub use group::CayleyGroup;
pub use perm::{Partition, PermGroup, Permutation};
pub use retraction::{is_irretractable, retract};
pub use solution::{solutions_isomorphic, verify_pentagon, RawTables, Solution};
