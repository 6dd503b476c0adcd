//! Finite permutation groups at desk scale, σ-class predicates over partitions of the
//! primes, and an exhaustive harness that checks covering-subgroup-system statements
//! on concrete groups.

mod bitset;
mod chain;
pub mod classes;
pub mod corpus;
pub mod error;
pub mod group;
pub mod harness;
mod lattice;
pub mod perm;
pub mod primes;
pub mod quotient;
pub mod sigma;
pub mod structure;

pub use classes::HallSigmaSet;
pub use error::{Error, Result};
pub use group::{conjugate_subgroup, AsSubgroup, Limits, PermGroup, Subgroup};
pub use perm::Perm;
pub use quotient::QuotientGroup;
pub use sigma::{BlockId, SigmaPartition};
pub use structure::ChiefFactor;
