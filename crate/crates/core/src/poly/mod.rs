//! Exact polynomial arithmetic.
//!
//! [`ParamPoly`] holds polynomials in the free parameters with rational
//! coefficients; [`BiPoly`] holds polynomials in two unknowns whose
//! coefficients are `ParamPoly`. Nothing here touches floating point except
//! [`BiPoly::evaluate_numeric`].

mod bipoly;
mod flat;
mod param;
mod resultant;

pub use bipoly::{arith, ArithOp, BiPoly, Mono2, Operand};
pub use param::{PMono, ParamPoly};
pub use resultant::{divide_exact, resultant_eliminate};

use num_traits::{One, Signed};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Formats `|c| * body` and reports whether `c` is negative.
/// Non-integer coefficients are parenthesised when multiplied: `(1/2)*x`.
pub(crate) fn fmt_rational_coeff(c: &Rational, body: Option<String>) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    let text = match body {
        None => {
            if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            }
        }
        Some(b) if a.is_one() => b,
        Some(b) if a.is_integer() => format!("{}*{}", a.numer(), b),
        Some(b) => format!("({}/{})*{}", a.numer(), a.denom(), b),
    };
    (neg, text)
}

#[cfg(test)]
mod tests;
