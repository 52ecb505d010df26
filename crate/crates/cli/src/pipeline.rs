//! Structure detection and dispatch to the reduction pipelines.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use rug::Complex;
use symroots::error::{Error, Result};
use symroots::numeric::{parse_real, work_bits, ParamValues, DEFAULT_PRECISION, MAX_PRECISION};
use symroots::numverify::{cluster_roots, numeric_roots, verify_solutions, NumPoly, VerifyOptions, DEFAULT_SEED};
use symroots::parse::{parse, parse_poly, to_bipoly, Expr, ProblemStatement};
use symroots::poly::{resultant_eliminate, BiPoly, Mono2, ParamPoly, Rational};
use symroots::radical::solve_coeffs;
use symroots::reduce::{
    assemble_iterate, assemble_shifted, find_split_constants, reduce_iterate, reduce_shifted_iterate,
    solve_reduction, solve_subsystem, solve_symmetric_system, split_lambda_mu, split_mixed,
    split_nonclassical, ReductionResult, Subsystem,
};
use symroots::solution::{Solution, SolutionSet};
use symroots::symmetry::{classify, SymmetryClass};

use crate::report::{complex_text, NumericValue, RootReport, SolveReport, VerifySummary};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub unknowns: Option<Vec<String>>,
    /// `name = value` bindings as typed; integers and fractions are exact,
    /// decimals switch to the numeric fallback.
    pub params: Vec<(String, String)>,
    pub precision: u32,
    /// Treat a single equation as `f(f(x)) = x` for this `f`.
    pub as_iterate: Option<String>,
    pub verify: bool,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            unknowns: None,
            params: Vec::new(),
            precision: DEFAULT_PRECISION,
            as_iterate: None,
            verify: true,
            samples: 20,
            tol: 1e-9,
            seed: DEFAULT_SEED,
        }
    }
}

impl SolveOptions {
    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            samples: self.samples,
            tol: self.tol,
            seed: self.seed,
            precision: self.precision,
        }
    }
}

/// Which pipeline produced the roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    SymmetricSystem,
    MixedSystem,
    NonclassicalSystem,
    LambdaMuSystem,
    LinearSubstitution,
    Iterate,
    ShiftedIterate,
    HiddenSymmetric,
    Univariate,
    Numeric,
}

impl Structure {
    pub fn label(&self) -> &'static str {
        match self {
            Structure::SymmetricSystem => "symmetric-system",
            Structure::MixedSystem => "mixed-system",
            Structure::NonclassicalSystem => "nonclassical-system",
            Structure::LambdaMuSystem => "line-split-system",
            Structure::LinearSubstitution => "linear-substitution",
            Structure::Iterate => "iterate",
            Structure::ShiftedIterate => "shifted-iterate",
            Structure::HiddenSymmetric => "hidden-symmetric",
            Structure::Univariate => "univariate",
            Structure::Numeric => "numeric",
        }
    }

    pub fn is_exact(&self) -> bool {
        *self != Structure::Numeric
    }
}

struct Bindings {
    exact: BTreeMap<String, ParamPoly>,
    decimal: BTreeMap<String, String>,
}

fn exact_value(text: &str) -> Option<Rational> {
    let t = text.trim();
    let int = |s: &str| s.trim().parse::<BigInt>().ok();
    match t.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (int(n)?, int(d)?);
            (d != BigInt::from(0)).then(|| Rational::new(n, d))
        }
        None => int(t).map(Rational::from_integer),
    }
}

fn bindings(stmt: &ProblemStatement, params: &[(String, String)]) -> Result<Bindings> {
    let mut b = Bindings {
        exact: BTreeMap::new(),
        decimal: BTreeMap::new(),
    };
    for (name, value) in params {
        if !stmt.parameters.contains(name) {
            return Err(Error::DomainError(format!(
                "`{name}` is not a parameter of the input (parameters: {})",
                stmt.parameters.join(", ")
            )));
        }
        if let Some(q) = exact_value(value) {
            b.exact.insert(name.clone(), ParamPoly::constant(q));
        } else if parse_real(value, 64).is_some() {
            b.decimal.insert(name.clone(), value.trim().to_string());
        } else {
            return Err(Error::DomainError(format!("cannot read `{value}` as a number for `{name}`")));
        }
    }
    if !b.decimal.is_empty() {
        let unbound: Vec<&String> = stmt
            .parameters
            .iter()
            .filter(|p| !b.exact.contains_key(*p) && !b.decimal.contains_key(*p))
            .collect();
        if !unbound.is_empty() {
            return Err(Error::DomainError(format!(
                "decimal values need every parameter bound; missing {}",
                unbound.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    Ok(b)
}

/// Parses, detects structure, solves, and optionally verifies.
pub fn solve(text: &str, opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    if !(DEFAULT_PRECISION..=MAX_PRECISION).contains(&opts.precision) {
        return Err(Error::DomainError(format!(
            "precision must be between {DEFAULT_PRECISION} and {MAX_PRECISION} digits"
        )));
    }
    let unknowns: Option<Vec<&str>> = opts
        .unknowns
        .as_ref()
        .map(|v| v.iter().map(String::as_str).collect());
    let stmt = parse(text, unknowns.as_deref())?;
    let slots = stmt.unknown_slots();
    let names = [slots[0].as_str(), slots[1].as_str()];
    let b = bindings(&stmt, &opts.params)?;
    let eqs: Vec<BiPoly> = to_bipoly(&stmt)?
        .into_iter()
        .map(|e| e.substitute_params(&b.exact))
        .collect();
    shape_check(&stmt, &eqs)?;
    let mut report = SolveReport::new(text, &opts.params, opts.precision);
    if !b.decimal.is_empty() {
        numeric_fallback(&eqs, &b.decimal, names, opts, &mut report)?;
    } else {
        let (structure, detail, set) = detect(&stmt, &eqs, &b.exact, names, opts)?;
        let targets = match &set.eliminated {
            Some(e) if eqs.len() == 1 => vec![e.clone()],
            _ => eqs.clone(),
        };
        report.fill(structure, detail, &set, opts.precision);
        if opts.verify {
            let v = verify_solutions(&targets, &set, &opts.verify_options())?;
            report.verification = Some(VerifySummary::from_report(&v));
        }
        report.solutions = Some(set);
    }
    report.equations = eqs;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn shape_check(stmt: &ProblemStatement, eqs: &[BiPoly]) -> Result<()> {
    match (stmt.unknowns.len(), eqs.len()) {
        (1, 1) | (2, 2) => {}
        (u, e) => {
            return Err(Error::UnsupportedShape(format!(
                "{e} equation(s) in {u} unknown(s); expected one equation in one unknown or two in two"
            )))
        }
    }
    for e in eqs {
        if e.is_zero() {
            return Err(Error::Degenerate(
                "an equation holds identically; every value solves it".into(),
            ));
        }
        if e.is_constant() {
            return Err(Error::DegreeError(format!(
                "{e} = 0 does not involve the unknowns"
            )));
        }
    }
    Ok(())
}

fn same_up_to_scale(a: &BiPoly, b: &BiPoly) -> bool {
    a.primitive() == b.primitive()
}

fn detect(
    stmt: &ProblemStatement,
    eqs: &[BiPoly],
    exact: &BTreeMap<String, ParamPoly>,
    names: [&str; 2],
    opts: &SolveOptions,
) -> Result<(Structure, String, SolutionSet)> {
    if eqs.len() == 2 {
        return detect_system(&eqs[0], &eqs[1], names);
    }
    let e = &eqs[0];
    if let Some(f) = &opts.as_iterate {
        let f = parse_poly(f, names)?.substitute_params(exact);
        if !same_up_to_scale(&assemble_iterate(&f), e) {
            return Err(Error::UnsupportedShape(format!(
                "the equation is not f(f(x)) = x for f = {f}"
            )));
        }
        let set = project(solve_reduction(&reduce_iterate(&f)?, names)?, e, names);
        return Ok((Structure::Iterate, format!("f(f(x)) = x with f = {f}"), set));
    }
    let sides = (&stmt.equations[0].lhs, &stmt.equations[0].rhs);
    let candidates = candidates(sides, names, exact)?;
    let n = e.degree_x();
    // The shifted shape is also g(g(x)) = x for g = a*f + x + a*b; it is
    // tried first as the more specific match.
    if let Some((f, a, b)) = shifted_shape(&candidates, e) {
        let r = reduce_shifted_iterate(&f, &a, &b)?;
        let set = project(solve_reduction(&r, names)?, e, names);
        let detail = format!("f(a*f(x)+x+a*b)+f(x)+2*b = 0 with f = {f}, a = {a}, b = {b}");
        return Ok((Structure::ShiftedIterate, detail, set));
    }
    for f in candidates.iter().filter(|f| f.degree_x().pow(2) == n) {
        if same_up_to_scale(&assemble_iterate(f), e) {
            let set = project(solve_reduction(&reduce_iterate(f)?, names)?, e, names);
            return Ok((Structure::Iterate, format!("f(f(x)) = x with f = {f}"), set));
        }
    }
    if let Some((p, q)) = hidden_symmetric(sides, e, names, exact)? {
        let set = project(solve_symmetric_system(&p, &q)?, e, names);
        let detail = format!("symmetric system {p} = 0, {q} = 0 in ({}, {})", names[0], names[1]);
        return Ok((Structure::HiddenSymmetric, detail, set));
    }
    let roots = solve_coeffs(&e.univariate_coeffs()?, false)?;
    let mut set = SolutionSet::new(&[names[0]]);
    for a in &roots.assumptions {
        set.assume(a);
    }
    for r in roots.roots {
        set.push(Solution::Single(r.expr), r.multiplicity, "closed form");
    }
    set.eliminated = Some(e.clone());
    Ok((Structure::Univariate, format!("degree {} closed form", e.degree_x()), set))
}

fn detect_system(p: &BiPoly, q: &BiPoly, names: [&str; 2]) -> Result<(Structure, String, SolutionSet)> {
    let cp = classify(p).unwrap_or(SymmetryClass::Neither);
    let cq = classify(q).unwrap_or(SymmetryClass::Neither);
    use SymmetryClass::*;
    match (cp, cq) {
        (Symmetric, Symmetric) => {
            let set = solve_symmetric_system(p, q)?;
            return Ok((Structure::SymmetricSystem, "both equations symmetric".into(), set));
        }
        (Symmetric, AntiSymmetric) | (AntiSymmetric, Symmetric) => {
            let (s, a) = if cp == Symmetric { (p, q) } else { (q, p) };
            let set = solve_reduction(&split_mixed(s, a)?, names)?;
            return Ok((Structure::MixedSystem, "symmetric and anti-symmetric equations".into(), set));
        }
        _ => {}
    }
    if same_up_to_scale(q, &p.swap()) {
        let set = solve_reduction(&split_nonclassical(p, &p.zero_like())?, names)?;
        return Ok((
            Structure::NonclassicalSystem,
            "equations exchanged by swapping the unknowns".into(),
            set,
        ));
    }
    let mut last_err = None;
    for c in find_split_constants(p, q, None) {
        let r: ReductionResult = split_lambda_mu(p, q, &c)?;
        match solve_reduction(&r, names) {
            Ok(set) => {
                let detail = format!("split along {} = ({})*{} with mu = {}", names[1], c.lambda, names[0], c.mu);
                return Ok((Structure::LambdaMuSystem, detail, set));
            }
            Err(e) => last_err = Some(e),
        }
    }
    let sub = Subsystem::new(vec![p.clone(), q.clone()], None, "direct substitution");
    match solve_subsystem(&sub, names) {
        Ok(set) => Ok((Structure::LinearSubstitution, "one equation linear in an unknown".into(), set)),
        Err(Error::UnsupportedStructure(msg)) => Err(Error::NotSolvableHere(format!(
            "no supported structure: not symmetric, mixed, swap-interchangeable or split along a line ({})",
            last_err.map(|e| e.to_string()).unwrap_or(msg)
        ))),
        Err(e) => Err(e),
    }
}

/// Polynomials of the subexpressions that involve the unknown.
fn candidates(
    sides: (&Expr, &Expr),
    names: [&str; 2],
    exact: &BTreeMap<String, ParamPoly>,
) -> Result<Vec<BiPoly>> {
    let mut out: Vec<BiPoly> = Vec::new();
    let mut seen = BTreeSet::new();
    for side in [sides.0, sides.1] {
        for s in side.subtrees() {
            if !s.contains_ident(names[0]) || seen.contains(&s.to_string()) {
                continue;
            }
            seen.insert(s.to_string());
            let p = s.to_poly(names)?.substitute_params(exact);
            if p.degree_x() >= 1 && p != p.var_x() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Finds `f`, `a`, `b` with `e = f(a*f(x) + x + a*b) + f(x) + 2b` up to scale,
/// taking `f` and the inner argument from subexpressions.
fn shifted_shape(candidates: &[BiPoly], e: &BiPoly) -> Option<(BiPoly, ParamPoly, ParamPoly)> {
    let n = e.degree_x();
    for f in candidates.iter().filter(|f| f.degree_x().pow(2) == n) {
        let d = f.degree_x();
        for g in candidates.iter().filter(|g| g.degree_x() == d && *g != f) {
            let h = g - &g.var_x();
            let Ok(a) = h.coeff(d, 0).divide_exact(&f.coeff(d, 0)) else {
                continue;
            };
            if a.is_zero() {
                continue;
            }
            let rest = &h - &f.scale_param(&a);
            if !rest.is_constant() {
                continue;
            }
            let Ok(b) = rest.coeff(0, 0).divide_exact(&a) else {
                continue;
            };
            if same_up_to_scale(&assemble_shifted(f, &a, &b), e) {
                return Some((f.clone(), a, b));
            }
        }
    }
    None
}

/// `base = s * (A - x^k)` with `s = +-1` and `A` free of the unknown.
fn split_base(base: &BiPoly) -> Option<(i32, ParamPoly, u32)> {
    let k = base.degree_x();
    if k == 0 || base.degree_y() > 0 {
        return None;
    }
    let c = base.coeff(k, 0).constant_value()?;
    let one = Rational::from_integer(1.into());
    let s = if c == -one.clone() {
        1
    } else if c == one {
        -1
    } else {
        return None;
    };
    let rest = base - &base.monomial_like(Mono2::new(k, 0), ParamPoly::constant(c));
    if !rest.is_constant() {
        return None;
    }
    let a = rest.coeff(0, 0);
    Some((s, if s == 1 { a } else { -a }, k))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(A - x^k)^m = (B - x^m)^k` with `gcd(k, m) = 1`: the pair `x`, `y` with
/// `y^k = A - x^k` and `y^m = B - x^m` solves `x^k + y^k = A, x^m + y^m = B`.
fn hidden_symmetric(
    sides: (&Expr, &Expr),
    e: &BiPoly,
    names: [&str; 2],
    exact: &BTreeMap<String, ParamPoly>,
) -> Result<Option<(BiPoly, BiPoly)>> {
    let (l, r) = match sides {
        (Expr::Sub(l, r), Expr::Num(z)) if *z == BigInt::from(0) => (l.as_ref(), r.as_ref()),
        other => other,
    };
    let (Expr::Pow(lb, le), Expr::Pow(rb, re)) = (l, r) else {
        return Ok(None);
    };
    let base = |b: &Expr| -> Result<Option<(i32, ParamPoly, u32)>> {
        Ok(split_base(&b.to_poly(names)?.substitute_params(exact)))
    };
    let (Some((s1, a, k)), Some((s2, b, m))) = (base(lb)?, base(rb)?) else {
        return Ok(None);
    };
    if *le != m || *re != k || gcd(k, m) != 1 || k == m {
        return Ok(None);
    }
    if s1.pow(m) != s2.pow(k) {
        return Ok(None);
    }
    let zero = e.zero_like();
    let (x, y) = (zero.var_x(), zero.var_y());
    let p = &(&x.pow(k) + &y.pow(k)) - &zero.constant_like(a);
    let q = &(&x.pow(m) + &y.pow(m)) - &zero.constant_like(b);
    let res = resultant_eliminate(&p, &q, names[1])?;
    Ok(same_up_to_scale(&res, e).then_some((p, q)))
}

/// Keeps the first coordinates, attaching the source equation.
fn project(set: SolutionSet, e: &BiPoly, names: [&str; 2]) -> SolutionSet {
    let mut out = SolutionSet::new(&[names[0]]);
    for a in &set.assumptions {
        out.assume(a);
    }
    for f in &set.flags {
        out.flag(f.clone());
    }
    for entry in &set.entries {
        out.push(
            Solution::Single(entry.solution.x().clone()),
            entry.multiplicity,
            &entry.provenance,
        );
    }
    out.eliminated = Some(e.clone());
    out.dedup();
    if !out.is_degenerate() && out.count() != e.degree_x() {
        out.flag(format!(
            "found {} roots for a degree {} equation",
            out.count(),
            e.degree_x()
        ));
    }
    out
}

/// Relative residual `|p(z)| / sum |c_i| |z|^i`.
pub(crate) fn relative_residual(coeffs: &[Complex], z: &Complex, bits: u32) -> f64 {
    let mut val = Complex::with_val(bits, 0);
    let mut scale = rug::Float::with_val(bits, 0);
    let az = rug::Float::with_val(bits, z.abs_ref());
    for c in coeffs.iter().rev() {
        val = Complex::with_val(bits, &val * z) + c;
        scale = rug::Float::with_val(bits, &scale * &az) + rug::Float::with_val(bits, c.abs_ref());
    }
    if scale.is_zero() {
        return 0.0;
    }
    let v = rug::Float::with_val(bits, val.abs_ref());
    (v / scale).to_f64()
}

fn numeric_fallback(
    eqs: &[BiPoly],
    decimal: &BTreeMap<String, String>,
    names: [&str; 2],
    opts: &SolveOptions,
    report: &mut SolveReport,
) -> Result<()> {
    let bits = work_bits(opts.precision);
    let values: ParamValues = decimal
        .iter()
        .map(|(k, v)| {
            let f = parse_real(v, bits).expect("checked when binding");
            (k.clone(), Complex::with_val(bits, (f, 0)))
        })
        .collect();
    let target = match eqs {
        [e] => e.clone(),
        [p, q] => {
            report.flags.push(format!(
                "numeric values are the {} coordinates of the solutions",
                names[0]
            ));
            resultant_eliminate(p, q, names[1])?
        }
        _ => unreachable!("shape checked"),
    };
    let coeffs: Vec<Complex> = target
        .univariate_coeffs()?
        .iter()
        .map(|c| c.eval_complex(&values, bits))
        .collect::<Result<_>>()?;
    let poly = NumPoly::new(coeffs.clone());
    if poly.degree() == 0 {
        return Err(Error::DegreeError(
            "the equation has no roots at these parameter values".into(),
        ));
    }
    let roots = numeric_roots(&poly, opts.precision)?;
    let mut max_residual: f64 = 0.0;
    for z in &roots {
        max_residual = max_residual.max(relative_residual(poly.coeffs(), z, bits));
    }
    for (z, m) in cluster_roots(&roots, opts.precision) {
        let value = NumericValue::from_complex(&z, opts.precision);
        report.roots.push(RootReport {
            expr: complex_text(&value),
            multiplicity: m,
            numeric: Some(value),
            provenance: "numeric root finder".into(),
        });
    }
    report.structure = Structure::Numeric;
    report.detail = "numeric fallback for decimal parameter values".into();
    report.verification = opts.verify.then(|| VerifySummary {
        samples: 1,
        max_residual,
        passed: max_residual <= opts.tol,
        details: Vec::new(),
    });
    Ok(())
}
