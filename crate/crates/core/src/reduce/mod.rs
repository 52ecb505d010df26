//! Reduction pipelines that split structured equations and systems into
//! pieces the closed-form solvers can handle.

mod iterate;
mod lambda_mu;
mod sigma;
mod split;
mod subsystem;

use std::fmt;

pub use iterate::{assemble_iterate, assemble_shifted, reduce_iterate, reduce_shifted_iterate};
pub use lambda_mu::{default_candidates, find_split_constants, generate_knab, split_lambda_mu, Knab};
pub use sigma::{eliminate_sigma2, solve_sigma, solve_symmetric_system, SigmaReduction};
pub use split::{split_mixed, split_nonclassical};
pub use subsystem::{solve_reduction, solve_subsystem};

use crate::poly::{BiPoly, Mono2, ParamPoly, Rational};
use crate::radical::RadicalExpr;
use crate::symmetry::SigmaPoly;

/// A linear tie `y = lambda*x + shift` between the two unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub lambda: Rational,
    pub shift: ParamPoly,
}

impl Constraint {
    pub fn diagonal() -> Self {
        Self::linear(Rational::from_integer(1.into()))
    }

    pub fn linear(lambda: Rational) -> Self {
        Constraint {
            lambda,
            shift: ParamPoly::zero(),
        }
    }

    /// The right-hand side as a polynomial in the first unknown of `like`.
    pub fn image(&self, like: &BiPoly) -> BiPoly {
        let mut terms = vec![(Mono2::new(1, 0), ParamPoly::constant(self.lambda.clone()))];
        terms.push((Mono2::new(0, 0), self.shift.clone()));
        let n = like.names();
        BiPoly::from_terms(n, terms)
    }

    /// The second coordinate for a given first coordinate.
    pub fn apply(&self, x: &RadicalExpr) -> RadicalExpr {
        RadicalExpr::add(vec![
            RadicalExpr::scale(x, &self.lambda),
            RadicalExpr::from_param_poly(&self.shift),
        ])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subsystem {
    /// Each polynomial is read as `= 0`.
    pub equations: Vec<BiPoly>,
    pub constraint: Option<Constraint>,
    pub provenance: String,
    /// Set when the branch has infinitely many solutions.
    pub degenerate: bool,
}

impl Subsystem {
    pub fn new(equations: Vec<BiPoly>, constraint: Option<Constraint>, provenance: &str) -> Self {
        let degenerate = equations.iter().all(|e| e.is_zero());
        Subsystem {
            equations: equations.into_iter().filter(|e| !e.is_zero()).collect(),
            constraint,
            provenance: provenance.to_string(),
            degenerate,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.equations.iter().map(|e| format!("{e} = 0")).collect();
        if let Some(c) = &self.constraint {
            if let Some(e) = self.equations.first() {
                let [x, y] = e.names();
                parts.push(format!("{y} = {}", c.image(&BiPoly::zero_in(x, y))));
            }
        }
        if parts.is_empty() {
            parts.push("0 = 0".into());
        }
        write!(f, "{{{}}}  [{}]", parts.join(", "), self.provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ReductionResult {
    pub subsystems: Vec<Subsystem>,
    /// Parameter expressions assumed nonzero.
    pub assumptions: Vec<ParamPoly>,
    /// The symmetric branch rewritten in `s1`, `s2`.
    pub sigma_equations: Option<[SigmaPoly; 2]>,
    pub flags: Vec<String>,
}

impl ReductionResult {
    pub(crate) fn flag(&mut self, text: impl Into<String>) {
        let t = text.into();
        if !self.flags.contains(&t) {
            self.flags.push(t);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitConstants {
    pub lambda: Rational,
    pub mu: Rational,
}

pub(crate) fn note(list: &mut Vec<ParamPoly>, p: &ParamPoly) {
    if p.is_constant() {
        return;
    }
    let p = if p.leading_sign() < 0 { -p } else { p.clone() };
    if !list.contains(&p) {
        list.push(p);
    }
}

/// Strips parameter monomial content (recording each parameter as nonzero)
/// and rational content.
pub(crate) fn normalize(p: &BiPoly, assumptions: &mut Vec<ParamPoly>) -> BiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let m = p.param_monomial_content();
    let p = if m.is_one() {
        p.clone()
    } else {
        for (name, _) in m.factors() {
            note(assumptions, &ParamPoly::param(name));
        }
        p.div_param_monomial(&m).expect("content divides")
    };
    p.primitive()
}

/// `sum coeffs[k] * s^k` built through the canonicalizing constructors.
pub(crate) fn horner(coeffs: &[ParamPoly], s: &RadicalExpr) -> RadicalExpr {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            RadicalExpr::mul(vec![
                RadicalExpr::from_param_poly(c),
                RadicalExpr::pow(s, k as i32),
            ])
        })
        .collect();
    RadicalExpr::add(terms)
}
