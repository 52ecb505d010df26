//! Exact radical solutions for parameterized polynomial equations and
//! two-equation systems with visible or hidden permutation symmetry.

pub mod error;
pub mod numeric;
pub mod numverify;
pub mod parse;
pub mod poly;
pub mod radical;
pub mod reduce;
pub mod solution;
pub mod symmetry;

pub use error::{Error, Result};

/// Crate version, reported in machine output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
