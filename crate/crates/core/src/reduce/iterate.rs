use std::collections::BTreeMap;

use super::{split_nonclassical, ReductionResult};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, ParamPoly, Rational};

fn check_univariate(f: &BiPoly) -> Result<()> {
    if f.degree_y() > 0 {
        return Err(Error::ArityError(format!(
            "{f} must only involve {}",
            f.names()[0]
        )));
    }
    if f.degree_x() == 0 {
        return Err(Error::DegreeError(format!("{f} is constant")));
    }
    Ok(())
}

fn compose(f: &BiPoly, inner: &BiPoly) -> BiPoly {
    let mut b = BTreeMap::new();
    b.insert(f.names()[0].to_string(), inner.clone());
    f.substitute(&b).expect("same unknowns")
}

fn relabel(mut r: ReductionResult, diagonal: &str) -> ReductionResult {
    for s in &mut r.subsystems {
        if s.provenance.starts_with("diagonal") {
            s.provenance = diagonal.to_string();
        }
    }
    r
}

/// `f(f(x)) - x`.
pub fn assemble_iterate(f: &BiPoly) -> BiPoly {
    &compose(f, f) - &f.var_x()
}

/// `f(a*f(x) + x + a*b) + f(x) + 2b`.
pub fn assemble_shifted(f: &BiPoly, a: &ParamPoly, b: &ParamPoly) -> BiPoly {
    let inner = &(&f.scale_param(a) + &f.var_x()) + &f.constant_like(a * b);
    &(&compose(f, &inner) + f) + &f.constant_like(b.scale(&Rational::from_integer(2.into())))
}

/// `f(f(x)) = x` as the system `y = f(x), x = f(y)`.
pub fn reduce_iterate(f: &BiPoly) -> Result<ReductionResult> {
    check_univariate(f)?;
    if *f == f.var_x() {
        return Err(Error::Degenerate("f(x) = x makes every x a solution".into()));
    }
    let p = &f.var_y() - f;
    let r = split_nonclassical(&p, &p.zero_like())?;
    Ok(relabel(r, "diagonal branch f(x) = x"))
}

/// `f(a*f(x) + x + a*b) + f(x) + 2b = 0` as the system
/// `y = a*f(x) + x + a*b, x = a*f(y) + y + a*b`.
pub fn reduce_shifted_iterate(f: &BiPoly, a: &ParamPoly, b: &ParamPoly) -> Result<ReductionResult> {
    check_univariate(f)?;
    let p = &(&(&f.var_y() - &f.scale_param(a)) - &f.var_x()) - &f.constant_like(a * b);
    let r = split_nonclassical(&p, &p.zero_like())?;
    Ok(relabel(r, "diagonal branch f(x) + b = 0"))
}
