use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Complex;
use serde_json::{json, Value};

use super::aberth::{numeric_roots, NumPoly};
use super::matching::match_roots;
use crate::error::{Error, Result};
use crate::numeric::{complex_from_rational, magnitude, work_bits, ParamValues, DEFAULT_PRECISION};
use crate::poly::{resultant_eliminate, BiPoly, ParamPoly, Rational};
use crate::solution::{to_complex, SolutionSet};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Draws every parameter as `n/d` with `n` in `[-10, 10]` and `d` in
/// `[1, 10]`; `None` when an assumed-nonzero expression vanishes there.
pub fn sample_params(
    rng: &mut impl Rng,
    names: &[String],
    assumptions: &[ParamPoly],
) -> Option<BTreeMap<String, Rational>> {
    let point: BTreeMap<String, Rational> = names
        .iter()
        .map(|n| {
            let num: i64 = rng.gen_range(-10..=10);
            let den: i64 = rng.gen_range(1..=10);
            (n.clone(), Rational::new(num.into(), den.into()))
        })
        .collect();
    for a in assumptions {
        match a.eval_rational(&point) {
            Ok(v) if v == Rational::from_integer(0.into()) => return None,
            _ => {}
        }
    }
    Some(point)
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub precision: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 20,
            tol: 1e-9,
            seed: DEFAULT_SEED,
            precision: DEFAULT_PRECISION,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FailureKind {
    Residual {
        equation: usize,
        solution: usize,
        residual: f64,
    },
    Count {
        expected: usize,
        found: u32,
    },
    Match {
        max_distance: f64,
    },
    Evaluation(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub sample: usize,
    pub params: BTreeMap<String, String>,
    pub kind: FailureKind,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "sample {} [{}]: ", self.sample, at.join(", "))?;
        match &self.kind {
            FailureKind::Residual {
                equation,
                solution,
                residual,
            } => write!(
                f,
                "equation {} has relative residual {residual:.3e} at solution {}",
                equation + 1,
                solution + 1
            ),
            FailureKind::Count { expected, found } => {
                write!(f, "expected {expected} roots with multiplicity, found {found}")
            }
            FailureKind::Match { max_distance } => write!(
                f,
                "first coordinates differ from the independent root finder by {max_distance:.3e}"
            ),
            FailureKind::Evaluation(e) => write!(f, "evaluation failed: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub rejected: usize,
    pub max_residual: f64,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "max_residual": self.max_residual,
            "passed": self.passed,
        })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verification {}: {} samples (seed {}), max relative residual {:.3e}",
            if self.passed { "passed" } else { "FAILED" },
            self.samples,
            self.seed,
            self.max_residual
        )?;
        for fl in &self.failures {
            writeln!(f, "  {fl}")?;
        }
        Ok(())
    }
}

fn round_to_digits(z: &Complex, digits: u32, bits: u32) -> Complex {
    let p = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
    let r = Complex::with_val(p, z);
    Complex::with_val(bits, &r)
}

/// Shear slopes tried in order for the two-equation cross-check.
const SHEARS: [(i64, i64); 4] = [(2, 7), (-3, 11), (5, 13), (-7, 17)];

/// The univariate polynomial used for the root-count cross-check.
///
/// For two equations, `x = u + t*y` is substituted first so both leading
/// coefficients in `y` are constants; the resultant in `u` then counts
/// exactly the finite solutions, whose `u` values are `x - t*y`.
fn elimination_target(original: &[BiPoly], solutions: &SolutionSet) -> Option<(BiPoly, Option<Rational>)> {
    if let Some(e) = &solutions.eliminated {
        return Some((e.clone(), None));
    }
    match original {
        [p] if p.degree_y() == 0 => Some((p.clone(), None)),
        [p, q] => {
            let [xn, yn] = p.names();
            for (n, d) in SHEARS {
                let t = Rational::new(n.into(), d.into());
                let image = &p.var_x() + &p.var_y().scale(&t);
                let bind: BTreeMap<String, BiPoly> = [(xn.to_string(), image)].into_iter().collect();
                let (ps, qs) = (p.substitute(&bind).ok()?, q.substitute(&bind).ok()?);
                let constant_lead = |f: &BiPoly| {
                    let cs = f.coeffs_in(1);
                    cs.len() > 1 && cs.last().is_some_and(|c| c.is_constant())
                };
                if constant_lead(&ps) && constant_lead(&qs) {
                    let r = resultant_eliminate(&ps, &qs, yn).ok()?;
                    return Some((r, Some(t)));
                }
            }
            None
        }
        _ => None,
    }
}

/// Checks every solution against every original equation at random
/// rational parameter points, and cross-checks the first coordinates
/// against the numeric roots of an eliminated univariate polynomial.
///
/// Solution values are rounded to `precision` digits before substitution,
/// so tolerances below that level cannot pass. Residuals are relative to
/// `sum |c| |monomial|` at the point.
pub fn verify_solutions(
    original: &[BiPoly],
    solutions: &SolutionSet,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    if opts.samples == 0 {
        return Err(Error::DomainError("at least one sample is required".into()));
    }
    let precision = opts.precision.max(15);
    let bits = work_bits(precision);
    let mut names: BTreeSet<String> = solutions.params();
    for p in original {
        names.extend(p.params());
    }
    let names: Vec<String> = names.into_iter().collect();
    let target = if solutions.is_degenerate() {
        None
    } else {
        elimination_target(original, solutions)
    };
    let target_coeffs = target
        .as_ref()
        .and_then(|(t, shear)| t.univariate_coeffs().ok().map(|c| (c, shear.clone())));
    let wanted = if names.is_empty() { 1 } else { opts.samples };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = VerifyReport {
        seed: opts.seed,
        samples: 0,
        rejected: 0,
        max_residual: 0.0,
        passed: false,
        failures: Vec::new(),
    };
    let mut attempts = 0;
    while report.samples < wanted && attempts < 100 * wanted {
        attempts += 1;
        let Some(point) = sample_params(&mut rng, &names, &solutions.assumptions) else {
            report.rejected += 1;
            continue;
        };
        let params = to_complex(&point);
        let shown: BTreeMap<String, String> =
            point.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        let values = match solutions.evaluate(&params, precision) {
            Ok(v) => v,
            Err(Error::NumericSingularity(_)) => {
                report.rejected += 1;
                continue;
            }
            Err(e) => {
                report.failures.push(Failure {
                    sample: report.samples,
                    params: shown,
                    kind: FailureKind::Evaluation(e.to_string()),
                });
                report.samples += 1;
                continue;
            }
        };
        let sample = report.samples;
        report.samples += 1;
        let values: Vec<Vec<Complex>> = values
            .iter()
            .map(|v| v.iter().map(|z| round_to_digits(z, precision, bits)).collect())
            .collect();
        for (si, v) in values.iter().enumerate() {
            for (ei, eq) in original.iter().enumerate() {
                let names2 = eq.names();
                let mut pt = BTreeMap::new();
                for (k, z) in v.iter().enumerate() {
                    if let Some(n) = solutions.unknowns.get(k) {
                        pt.insert(n.clone(), z.clone());
                    }
                }
                // a single-unknown solution leaves the placeholder unknown unused
                pt.entry(names2[1].to_string())
                    .or_insert_with(|| Complex::new(bits));
                let r = eq.evaluate_numeric(&pt, &params, precision)?;
                let scale = eq.residual_scale(&pt, &params, precision)?;
                let rel = if scale > 0.0 { magnitude(&r) / scale } else { magnitude(&r) };
                report.max_residual = report.max_residual.max(rel);
                if !(rel < opts.tol) {
                    report.failures.push(Failure {
                        sample,
                        params: shown.clone(),
                        kind: FailureKind::Residual {
                            equation: ei,
                            solution: si,
                            residual: rel,
                        },
                    });
                }
            }
        }
        if let Some((tc, shear)) = &target_coeffs {
            cross_check(tc, shear.as_ref(), solutions, &values, &params, precision, bits, sample, &shown, &mut report)?;
        }
    }
    report.passed = report.failures.is_empty() && report.samples == wanted;
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cross_check(
    coeffs: &[ParamPoly],
    shear: Option<&Rational>,
    solutions: &SolutionSet,
    values: &[Vec<Complex>],
    params: &ParamValues,
    precision: u32,
    bits: u32,
    sample: usize,
    shown: &BTreeMap<String, String>,
    report: &mut VerifyReport,
) -> Result<()> {
    let cs: Vec<Complex> = coeffs
        .iter()
        .map(|c| c.eval_complex(params, bits))
        .collect::<Result<_>>()?;
    let maxc = cs.iter().map(magnitude).fold(0.0, f64::max);
    let np = NumPoly::new(
        cs.into_iter()
            .map(|c| if magnitude(&c) <= 1e-30 * maxc.max(1.0) { Complex::new(bits) } else { c })
            .collect(),
    );
    if np.degree() + 1 != coeffs.len() {
        // leading coefficient vanishes at this point
        return Ok(());
    }
    let found = solutions.count();
    if found as usize != np.degree() {
        report.failures.push(Failure {
            sample,
            params: shown.clone(),
            kind: FailureKind::Count {
                expected: np.degree(),
                found,
            },
        });
        return Ok(());
    }
    if np.degree() == 0 {
        return Ok(());
    }
    let roots = match numeric_roots(&np, precision) {
        Ok(r) => r,
        Err(Error::NoConvergence { .. }) => return Ok(()),
        Err(e) => return Err(e),
    };
    let t = shear.map(|t| complex_from_rational(t, bits));
    let mut xs = Vec::new();
    for (e, v) in solutions.entries.iter().zip(values) {
        let u = match (&t, v.get(1)) {
            (Some(t), Some(y)) => Complex::with_val(bits, &v[0] - Complex::with_val(bits, t * y)),
            _ => v[0].clone(),
        };
        for _ in 0..e.multiplicity {
            xs.push(u.clone());
        }
    }
    let size = roots.iter().map(magnitude).fold(0.0, f64::max);
    let m = match_roots(&xs, &roots, 1e-6 * (1.0 + size));
    if !m.success {
        report.failures.push(Failure {
            sample,
            params: shown.clone(),
            kind: FailureKind::Match {
                max_distance: m.max_distance,
            },
        });
    }
    Ok(())
}
