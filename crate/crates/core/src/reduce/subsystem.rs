use super::{horner, normalize, solve_symmetric_system, ReductionResult, Subsystem};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, ParamPoly};
use crate::radical::{solve_coeffs, RadicalExpr};
use crate::solution::{Solution, SolutionSet};
use crate::symmetry::{classify, SymmetryClass};

type E = RadicalExpr;

enum Prepared {
    Empty(ParamPoly),
    Equations(Vec<BiPoly>),
}

fn prepare(eqs: &[BiPoly], assumptions: &mut Vec<ParamPoly>) -> Prepared {
    let mut out: Vec<BiPoly> = Vec::new();
    for e in eqs {
        let e = normalize(e, assumptions);
        if e.is_zero() {
            continue;
        }
        if e.is_constant() {
            return Prepared::Empty(e.coeff(0, 0));
        }
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Prepared::Equations(out)
}

fn push_univariate(
    set: &mut SolutionSet,
    u: &BiPoly,
    y_of: impl Fn(&E) -> E,
    provenance: &str,
) -> Result<()> {
    let roots = solve_coeffs(&u.univariate_coeffs()?, false)?;
    for a in &roots.assumptions {
        set.assume(a);
    }
    for r in &roots.roots {
        let y = y_of(&r.expr);
        set.push(Solution::Pair { x: r.expr.clone(), y }, r.multiplicity, provenance);
    }
    Ok(())
}

fn is_symmetric(p: &BiPoly) -> bool {
    matches!(classify(p), Ok(SymmetryClass::Symmetric))
}

/// `lin = A*y + B(x)` with `A` free of the unknowns; substitutes
/// `y = -B/A` into `other`, cleared of denominators.
fn linear_substitution(
    lin: &BiPoly,
    other: &BiPoly,
    set: &mut SolutionSet,
    provenance: &str,
) -> Result<bool> {
    if lin.degree_y() != 1 {
        return Ok(false);
    }
    let parts = lin.coeffs_in(1);
    let a = &parts[1];
    if !a.is_constant() {
        return Ok(false);
    }
    let neg_b = -&parts[0];
    let c = other.coeffs_in(1);
    let m = c.len() - 1;
    let mut elim = other.zero_like();
    for (k, ck) in c.iter().enumerate() {
        if !ck.is_zero() {
            elim = &elim + &(&(ck * &neg_b.pow(k as u32)) * &a.pow((m - k) as u32));
        }
    }
    let a0 = a.coeff(0, 0);
    set.assume(&a0);
    let mut assumptions = Vec::new();
    let elim = normalize(&elim, &mut assumptions);
    for p in &assumptions {
        set.assume(p);
    }
    if elim.is_zero() {
        set.flag(format!("degenerate: {provenance} has infinitely many solutions"));
        return Ok(true);
    }
    if elim.is_constant() {
        set.assume(&elim.coeff(0, 0));
        set.flag(format!("empty branch: {provenance}"));
        return Ok(true);
    }
    let b_coeffs = neg_b.univariate_coeffs()?;
    let a_expr = E::from_param_poly(&a0);
    push_univariate(
        set,
        &elim,
        |x| E::div(&horner(&b_coeffs, x), &a_expr),
        provenance,
    )?;
    Ok(true)
}

/// Exact solutions of one branch as `(x, y)` pairs.
pub fn solve_subsystem(sub: &Subsystem, names: [&str; 2]) -> Result<SolutionSet> {
    let mut set = SolutionSet::new(&names);
    let prov = sub.provenance.as_str();
    let degenerate = |set: &mut SolutionSet| {
        set.flag(format!("degenerate: {prov} has infinitely many solutions"));
    };
    if sub.degenerate {
        degenerate(&mut set);
        return Ok(set);
    }
    let mut assumptions = Vec::new();
    let prepared = prepare(&sub.equations, &mut assumptions);
    for a in &assumptions {
        set.assume(a);
    }
    let eqs = match prepared {
        Prepared::Empty(c) => {
            set.assume(&c);
            set.flag(format!("empty branch: {prov}"));
            return Ok(set);
        }
        Prepared::Equations(e) if e.is_empty() => {
            degenerate(&mut set);
            return Ok(set);
        }
        Prepared::Equations(e) => e,
    };
    if let Some(c) = &sub.constraint {
        let image = c.image(&eqs[0]);
        let restricted: Vec<BiPoly> = eqs.iter().map(|e| e.substitute_y(&image)).collect();
        let mut assumptions = Vec::new();
        let prepared = prepare(&restricted, &mut assumptions);
        for a in &assumptions {
            set.assume(a);
        }
        match prepared {
            Prepared::Empty(k) => {
                set.assume(&k);
                set.flag(format!("empty branch: {prov}"));
            }
            Prepared::Equations(u) if u.is_empty() => degenerate(&mut set),
            Prepared::Equations(u) if u.len() == 1 => {
                push_univariate(&mut set, &u[0], |x| c.apply(x), prov)?;
            }
            Prepared::Equations(_) => {
                return Err(Error::UnsupportedStructure(format!(
                    "{prov}: several distinct equations on one line"
                )))
            }
        }
        return Ok(set);
    }
    if eqs.len() == 1 {
        degenerate(&mut set);
        return Ok(set);
    }
    if eqs.len() == 2 && is_symmetric(&eqs[0]) && is_symmetric(&eqs[1]) {
        let mut s = solve_symmetric_system(&eqs[0], &eqs[1])?;
        for e in &mut s.entries {
            e.provenance = prov.to_string();
        }
        set.absorb(s);
        return Ok(set);
    }
    if eqs.len() == 2 {
        for (i, j) in [(0, 1), (1, 0)] {
            if linear_substitution(&eqs[i], &eqs[j], &mut set, prov)? {
                return Ok(set);
            }
        }
    }
    Err(Error::UnsupportedStructure(format!(
        "{prov}: no symmetric or linear structure to exploit"
    )))
}

/// Union of the branch solutions, deduplicated.
pub fn solve_reduction(r: &ReductionResult, names: [&str; 2]) -> Result<SolutionSet> {
    let mut set = SolutionSet::new(&names);
    for a in &r.assumptions {
        set.assume(a);
    }
    for f in &r.flags {
        set.flag(f.clone());
    }
    for sub in &r.subsystems {
        set.absorb(solve_subsystem(sub, names)?);
    }
    set.dedup();
    Ok(set)
}
