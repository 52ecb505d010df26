//! Radical expressions, their numeric evaluation and closed-form solutions
//! of univariate equations up to degree four.
//!
//! Text form uses `sqrt(.)`, `cbrt(.)`, `root(., n)` and `omega(n, j)` for
//! `exp(2*pi*i*j/n)`.

mod eval;
mod read;
mod expr;
pub(crate) mod qpoly;
mod simplify;
mod solve;

pub use eval::{eval_radical, principal_root, unity, Evaluator};
pub use expr::{Node, RadicalExpr};
pub use read::{parse_radical, parse_radical_tuple};
pub use simplify::simplify_radical;
pub use solve::{solve_coeffs, solve_univariate_radicals, RootEntry, RootSet};

use serde_json::{json, Value};

use crate::parse::Render;

impl Render for RadicalExpr {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_machine(&self) -> Value {
        json!({ "expr": self.to_string() })
    }
}

#[cfg(test)]
mod tests;
