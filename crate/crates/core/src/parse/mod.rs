//! Text front end: equations and systems in, polynomials out, plus rendering.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! system   = equation { ";" equation } ;
//! equation = expr "=" expr ;
//! expr     = term { ("+"|"-") term } ;
//! term     = factor { ("*"|"/") factor } ;
//! factor   = ["-"] base [ "^" nat { "^" nat } ] ;
//! base     = nat | ident | "(" expr ")" ;
//! ident    = letter [ digit ] ;
//! ```
//!
//! `/` only accepts divisors that reduce to a nonzero rational constant, so
//! rendered rational coefficients such as `(1/2)*x` parse back.

mod ast;
mod lexer;
mod parser;
mod render;

pub use ast::{Equation, Expr, ProblemStatement};
pub use parser::{parse, parse_expr, parse_poly};
pub use render::{render, Format, Render};

use crate::error::Result;
use crate::poly::BiPoly;

/// Each equation as `lhs - rhs`, expanded to canonical form.
pub fn to_bipoly(stmt: &ProblemStatement) -> Result<Vec<BiPoly>> {
    let names = stmt.unknown_slots();
    stmt.equations
        .iter()
        .map(|eq| eq.to_poly([&names[0], &names[1]]))
        .collect()
}
