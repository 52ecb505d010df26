use super::{normalize, Constraint, ReductionResult, Subsystem};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, Rational};
use crate::symmetry::{antisym_factor, classify, to_elementary, SymmetryClass};

fn class_of(p: &BiPoly) -> Result<SymmetryClass> {
    classify(p).map_err(|e| Error::ClassError(e.to_string()))
}

fn diagonal(p: &BiPoly) -> BiPoly {
    p.substitute_y(&p.var_x())
}

fn symmetric_branch(
    out: &mut ReductionResult,
    s: &BiPoly,
    d: &BiPoly,
    provenance: &str,
) -> Result<()> {
    let r = antisym_factor(d)?;
    let s = normalize(s, &mut out.assumptions);
    let r = normalize(&r, &mut out.assumptions);
    out.sigma_equations = Some([to_elementary(&s)?, to_elementary(&r)?]);
    let sub = Subsystem::new(vec![s, r], None, provenance);
    if sub.degenerate {
        out.flag(format!("degenerate: {provenance} holds identically"));
    }
    out.subsystems.push(sub);
    Ok(())
}

fn diagonal_branch(out: &mut ReductionResult, p: &BiPoly, provenance: &str) {
    let eq = normalize(&diagonal(p), &mut out.assumptions);
    let sub = Subsystem::new(vec![eq], Some(Constraint::diagonal()), provenance);
    if sub.degenerate {
        out.flag(format!("degenerate: every point of the line y = x solves {provenance}"));
    }
    out.subsystems.push(sub);
}

/// `p_s = 0, q_a = 0` with `p_s` symmetric and `q_a` anti-symmetric.
///
/// Since `q_a = (x - y) r` with `r` symmetric, the system is the union of
/// the diagonal `y = x` and the symmetric system `p_s = 0, r = 0`.
pub fn split_mixed(p_s: &BiPoly, q_a: &BiPoly) -> Result<ReductionResult> {
    if class_of(p_s)? != SymmetryClass::Symmetric {
        return Err(Error::ClassError(format!("{p_s} is not symmetric")));
    }
    if class_of(q_a)? != SymmetryClass::AntiSymmetric {
        return Err(Error::ClassError(format!("{q_a} is not anti-symmetric")));
    }
    let mut out = ReductionResult::default();
    diagonal_branch(&mut out, p_s, "diagonal branch y = x");
    symmetric_branch(&mut out, p_s, q_a, "symmetric branch")?;
    Ok(out)
}

/// `p(x, y) + q_s = 0, p(y, x) + q_s = 0` with `q_s` symmetric or zero.
///
/// The sum is symmetric and the difference anti-symmetric, which reduces the
/// system to the same two branches as [`split_mixed`].
pub fn split_nonclassical(p: &BiPoly, q_s: &BiPoly) -> Result<ReductionResult> {
    match class_of(q_s)? {
        SymmetryClass::Symmetric | SymmetryClass::Zero => {}
        _ => return Err(Error::ClassError(format!("{q_s} is neither symmetric nor zero"))),
    }
    if !p.same_names(q_s) {
        return Err(Error::SymbolMismatch("split_nonclassical operands differ".into()));
    }
    let two = Rational::from_integer(2.into());
    let sw = p.swap();
    let s = &(p + &sw) + &q_s.scale(&two);
    let d = p - &sw;
    let mut out = ReductionResult::default();
    if d.is_zero() {
        let eq = normalize(&(p + q_s), &mut out.assumptions);
        let mut sub = Subsystem::new(vec![eq], None, "coincident equations");
        sub.degenerate = true;
        out.subsystems.push(sub);
        out.flag("degenerate: both equations coincide");
        return Ok(out);
    }
    diagonal_branch(&mut out, &(p + q_s), "diagonal branch y = x");
    symmetric_branch(&mut out, &s, &d, "symmetric branch")?;
    Ok(out)
}
