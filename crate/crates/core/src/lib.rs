//! Exact arithmetic for extended weight semigroups of spherical homogeneous
//! spaces `G/H` with `G` a product of classical groups.

pub mod branching;
pub mod canonical;
pub mod cases;
pub mod error;
pub mod groups;
pub mod matrix;
pub mod par;
pub mod semigroup;
pub mod spectrum;
pub mod suite;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use matrix::{ExactMatrix, Q};
pub use par::Execution;
pub use weight::{ExtendedWeight, FactorType, Weight};
