//! Minimum test set toolkit: differentiation primitives, greedy and exact
//! solvers, the set cover transformation, adversarial instance generators,
//! and greedy-trace analysis.

pub mod analysis;
pub mod bitset;
pub mod diff;
pub mod error;
pub mod generators;
pub mod instance;
pub mod io;
pub mod setcover;
pub mod solvers;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use instance::Instance;
