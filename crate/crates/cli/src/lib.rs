//! Command-line front end: structure detection, reports and the built-in
//! benchmark problems.

pub mod pipeline;
pub mod problems;
pub mod report;

pub use pipeline::{solve, SolveOptions, Structure};
pub use report::{verify_saved, NumericValue, RootReport, SolveReport, VerifySummary};

use symroots::error::Error;

/// Process exit status for a failed run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParseError { .. } => 4,
        Error::NotSolvableHere(_) | Error::NotSolvableInRadicals { .. } => 3,
        _ => 1,
    }
}

/// Exit status for a finished solve: verified, failed, or not checked.
pub fn report_code(r: &SolveReport) -> i32 {
    match r.verified() {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    }
}
