//! Independent numeric oracle: simultaneous root finding, root matching and
//! residual checks of exact solutions at random parameter points.

mod aberth;
mod matching;
mod verify;

pub use aberth::{cluster_roots, numeric_roots, NumPoly};
pub use matching::{match_roots, MatchReport};
pub use verify::{
    sample_params, verify_solutions, Failure, FailureKind, VerifyOptions, VerifyReport,
    DEFAULT_SEED,
};
