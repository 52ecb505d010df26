use super::{horner, normalize, note};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, ParamPoly, Rational};
use crate::radical::{solve_coeffs, RadicalExpr};
use crate::solution::{Solution, SolutionSet};
use crate::symmetry::{classify, to_elementary, SigmaPoly, SymmetryClass};

type E = RadicalExpr;

/// A symmetric system after `s2` has been eliminated.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaReduction {
    pub system: [SigmaPoly; 2],
    /// Univariate in `s1`, primitive, positive leading coefficient.
    pub sigma1: SigmaPoly,
    /// `s2 = sigma2_num / sigma2_den`, both in `s1` only.
    pub sigma2_num: SigmaPoly,
    pub sigma2_den: SigmaPoly,
    pub assumptions: Vec<ParamPoly>,
    pub flags: Vec<String>,
}

fn rank(a: &BiPoly) -> u8 {
    match (a.is_constant(), a.coeff(0, 0).is_constant()) {
        (true, true) => 0,
        (true, false) => 1,
        _ => 2,
    }
}

fn leading_sign(p: &BiPoly) -> i32 {
    p.terms().next().map_or(0, |(_, c)| c.leading_sign())
}

/// Solves one equation for `s2` and substitutes into the other.
///
/// The linear equation is chosen by the shape of its `s2` coefficient:
/// rational constant first, then parameters only, then anything in `s1`.
pub fn eliminate_sigma2(system: &[SigmaPoly; 2]) -> Result<SigmaReduction> {
    let lin = (0..2)
        .filter(|&i| system[i].degree_s2() == 1)
        .min_by_key(|&i| rank(&system[i].as_bipoly().coeffs_in(1)[1]))
        .ok_or_else(|| {
            Error::UnsupportedStructure(format!(
                "neither {} = 0 nor {} = 0 is linear in s2",
                system[0], system[1]
            ))
        })?;
    let e1 = system[lin].as_bipoly();
    let e2 = system[1 - lin].as_bipoly();
    let parts = e1.coeffs_in(1);
    let a = parts[1].clone();
    let neg_b = -&parts[0];
    let mut assumptions = Vec::new();
    let mut flags = Vec::new();
    match rank(&a) {
        1 => note(&mut assumptions, &a.coeff(0, 0)),
        2 => flags.push(format!("assumes {a} != 0 at every root in s1")),
        _ => {}
    }
    let c = e2.coeffs_in(1);
    let m = c.len() - 1;
    let mut elim = e1.zero_like();
    for (k, ck) in c.iter().enumerate() {
        if !ck.is_zero() {
            elim = &elim + &(&(ck * &neg_b.pow(k as u32)) * &a.pow((m - k) as u32));
        }
    }
    if elim.is_zero() {
        return Err(Error::Degenerate(format!(
            "{} = 0 and {} = 0 leave s1 free",
            system[0], system[1]
        )));
    }
    let elim = normalize(&elim, &mut assumptions);
    let (mut num, mut den) = (neg_b, a);
    if let Some(q) = den.coeff(0, 0).constant_value().filter(|_| den.is_constant()) {
        num = num.scale(&q.recip());
        den = den.constant_like(ParamPoly::one());
    } else if leading_sign(&den) < 0 {
        num = -num;
        den = -den;
    }
    Ok(SigmaReduction {
        system: system.clone(),
        sigma1: elim.into(),
        sigma2_num: num.into(),
        sigma2_den: den.into(),
        assumptions,
        flags,
    })
}

fn trim(mut v: Vec<ParamPoly>) -> Vec<ParamPoly> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of `v` modulo `f` when `f` has a rational leading coefficient;
/// otherwise `v` unchanged.
fn reduce_mod(v: &[ParamPoly], f: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut v = trim(v.to_vec());
    let f = trim(f.to_vec());
    let Some(lead) = f.last().and_then(|c| c.constant_value()) else {
        return v;
    };
    if f.len() < 2 {
        return v;
    }
    let inv = lead.recip();
    while v.len() >= f.len() && !(v.len() == 1 && v[0].is_zero()) {
        let shift = v.len() - f.len();
        let q = v.last().unwrap().scale(&inv);
        for (i, fi) in f.iter().enumerate() {
            v[shift + i] = &v[shift + i] - &(&q * fi);
        }
        v.pop();
        v = trim(v);
        if v.is_empty() {
            v.push(ParamPoly::zero());
        }
    }
    v
}

fn coeffs(p: &SigmaPoly) -> Vec<ParamPoly> {
    p.as_bipoly()
        .univariate_coeffs()
        .expect("s1-only polynomial")
}

/// Roots of the `s1` polynomial, each turned into the two pairs of
/// `t^2 - s1*t + s2 = 0`.
pub fn solve_sigma(red: &SigmaReduction, names: [&str; 2], provenance: &str) -> Result<SolutionSet> {
    let mut set = SolutionSet::new(&names);
    for a in &red.assumptions {
        set.assume(a);
    }
    for f in &red.flags {
        set.flag(f.clone());
    }
    let c1 = coeffs(&red.sigma1);
    if c1.len() == 1 {
        set.assume(&c1[0]);
        set.flag(format!("empty branch: {}", provenance));
        return Ok(set);
    }
    let roots = solve_coeffs(&c1, true).map_err(|e| match e {
        Error::NotSolvableHere(reason) => Error::NotSolvableInRadicals {
            reason,
            sigma_system: vec![
                format!("{} = 0", red.system[0]),
                format!("{} = 0", red.system[1]),
                format!("{} = 0", red.sigma1),
            ],
        },
        e => e,
    })?;
    for a in &roots.assumptions {
        set.assume(a);
    }
    let den = red.sigma2_den.as_bipoly();
    if den.is_constant() {
        set.assume(&den.coeff(0, 0));
    }
    let s1sq = den.var_x().pow(2);
    let disc = &(den * &s1sq) - &red.sigma2_num.as_bipoly().scale(&Rational::from_integer(4.into()));
    let disc_c = disc.univariate_coeffs()?;
    let den_c = den.univariate_coeffs()?;
    let half = Rational::new(1.into(), 2.into());
    for r in &roots.roots {
        let s = &r.expr;
        let d = reduce_mod(&disc_c, &r.factor);
        let d_expr = if d.iter().all(|c| c.is_zero()) {
            E::zero()
        } else {
            E::div(&horner(&d, s), &horner(&reduce_mod(&den_c, &r.factor), s))
        };
        if d_expr.is_zero() {
            let x = E::scale(s, &half);
            set.push(Solution::Pair { x: x.clone(), y: x }, 2 * r.multiplicity, provenance);
            continue;
        }
        let sq = E::sqrt(&d_expr);
        let x1 = E::scale(&E::add(vec![s.clone(), sq.clone()]), &half);
        let x2 = E::scale(&E::sub(s, &sq), &half);
        set.push(Solution::Pair { x: x1.clone(), y: x2.clone() }, r.multiplicity, provenance);
        set.push(Solution::Pair { x: x2, y: x1 }, r.multiplicity, provenance);
    }
    Ok(set)
}

/// Solves two symmetric equations through `s1 = x + y`, `s2 = x*y`.
pub fn solve_symmetric_system(p: &BiPoly, q: &BiPoly) -> Result<SolutionSet> {
    for e in [p, q] {
        if !matches!(classify(e), Ok(SymmetryClass::Symmetric)) {
            return Err(Error::ClassError(format!("{e} is not symmetric")));
        }
    }
    let system = [to_elementary(p)?, to_elementary(q)?];
    let red = eliminate_sigma2(&system)?;
    solve_sigma(&red, p.names(), "symmetric system")
}
