use std::collections::BTreeSet;

use num_traits::Zero;

use super::{Constraint, ReductionResult, SplitConstants, Subsystem};
use crate::error::{Error, Result};
use crate::poly::{divide_exact, BiPoly, Mono2, ParamPoly, Rational};

/// Rationals `k/2` for `k` in `-6..=6`.
pub fn default_candidates() -> Vec<Rational> {
    let set: BTreeSet<Rational> = (-6..=6)
        .map(|k: i64| Rational::new(k.into(), 2.into()))
        .collect();
    set.into_iter().collect()
}

fn line(like: &BiPoly, lambda: &Rational) -> BiPoly {
    BiPoly::from_terms(
        like.names(),
        [(Mono2::new(1, 0), ParamPoly::constant(lambda.clone()))],
    )
}

fn restrict(p: &BiPoly, lambda: &Rational) -> BiPoly {
    p.substitute_y(&line(p, lambda))
}

fn holds(p: &BiPoly, q: &BiPoly, c: &SplitConstants) -> bool {
    (&restrict(p, &c.lambda) - &restrict(q, &c.lambda).scale(&c.mu)).is_zero()
}

/// Every `(lambda, mu)` with `mu != 0` and `p(x, lambda*x) = mu*q(x, lambda*x)`.
///
/// Pairs from `candidates` (default: the grid of [`default_candidates`]) are
/// tested directly; in addition, for each candidate `lambda` the ratio of
/// leading coefficients is tried as `mu`, so values off the grid are found.
pub fn find_split_constants(
    p: &BiPoly,
    q: &BiPoly,
    candidates: Option<&[(Rational, Rational)]>,
) -> Vec<SplitConstants> {
    let pairs: Vec<(Rational, Rational)> = match candidates {
        Some(c) => c.to_vec(),
        None => {
            let grid = default_candidates();
            grid.iter()
                .flat_map(|l| grid.iter().map(move |m| (l.clone(), m.clone())))
                .collect()
        }
    };
    let mut found = BTreeSet::new();
    let lambdas: BTreeSet<Rational> = pairs.iter().map(|(l, _)| l.clone()).collect();
    for (lambda, mu) in pairs {
        let c = SplitConstants { lambda, mu };
        if !c.mu.is_zero() && holds(p, q, &c) {
            found.insert(c);
        }
    }
    for lambda in lambdas {
        let (pl, ql) = (restrict(p, &lambda), restrict(q, &lambda));
        let (Some((mp, cp)), Some((mq, cq))) = (pl.terms().next(), ql.terms().next()) else {
            continue;
        };
        if mp != mq {
            continue;
        }
        let (Some((tp, rp)), Some((tq, rq))) = (cp.leading_term(), cq.leading_term()) else {
            continue;
        };
        if tp != tq {
            continue;
        }
        let c = SplitConstants {
            lambda,
            mu: rp / rq,
        };
        if holds(p, q, &c) {
            found.insert(c);
        }
    }
    found.into_iter().collect()
}

/// Splits `p = 0, q = 0` along the line `y = lambda*x`.
///
/// `p - mu*q` vanishes on the line, so it equals `(y - lambda*x) r` and the
/// system is the union of `{p = 0, y = lambda*x}` and `{p = 0, r = 0}`.
pub fn split_lambda_mu(p: &BiPoly, q: &BiPoly, c: &SplitConstants) -> Result<ReductionResult> {
    if c.mu.is_zero() {
        return Err(Error::ClassError("mu = 0 gives no split".into()));
    }
    if !holds(p, q, c) {
        return Err(Error::ClassError(format!(
            "p(x, {l}x) - {m}q(x, {l}x) is not identically zero",
            l = c.lambda,
            m = c.mu
        )));
    }
    let tag = format!("lambda = {}, mu = {}", c.lambda, c.mu);
    let diff = p - &q.scale(&c.mu);
    let mut out = ReductionResult::default();
    out.subsystems.push(Subsystem::new(
        vec![p.clone()],
        Some(Constraint::linear(c.lambda.clone())),
        &format!("line branch y = {}x ({tag})", c.lambda),
    ));
    if diff.is_zero() {
        let mut sub = Subsystem::new(vec![p.clone()], None, &format!("coincident pair ({tag})"));
        sub.degenerate = true;
        out.subsystems.push(sub);
        out.flag("degenerate: coincident pair, the second branch is the curve p = 0");
        return Ok(out);
    }
    let d = &p.var_y() - &line(p, &c.lambda);
    let r = divide_exact(&diff, &d).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    out.subsystems.push(Subsystem::new(
        vec![p.clone(), r],
        None,
        &format!("cofactor branch ({tag})"),
    ));
    Ok(out)
}

/// A symmetric power-sum system with its assembled single equation.
#[derive(Clone, Debug, PartialEq)]
pub struct Knab {
    /// `x^k + y^k - a` and `x^n + y^n - b`.
    pub system: [BiPoly; 2],
    /// `(a - x^k)^n - (b - x^n)^k`.
    pub equation: BiPoly,
}

pub fn generate_knab(k: u32, n: u32) -> Result<Knab> {
    if k == 0 || n == 0 {
        return Err(Error::DegreeError("exponents must be positive".into()));
    }
    let x = BiPoly::x();
    let y = BiPoly::y();
    let a = BiPoly::param("a");
    let b = BiPoly::param("b");
    let p = &(&x.pow(k) + &y.pow(k)) - &a;
    let q = &(&x.pow(n) + &y.pow(n)) - &b;
    let equation = &(&a - &x.pow(k)).pow(n) - &(&b - &x.pow(n)).pow(k);
    Ok(Knab {
        system: [p, q],
        equation,
    })
}
