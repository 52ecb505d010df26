use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numeric::{magnitude, to_pair, work_bits};

/// Polynomial with complex coefficients, ascending degree.
#[derive(Clone, Debug)]
pub struct NumPoly {
    coeffs: Vec<Complex>,
}

impl NumPoly {
    /// Drops leading coefficients of magnitude at most `1e-30`.
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.last().is_some_and(|c| magnitude(c) <= 1e-30) {
            coeffs.pop();
        }
        NumPoly { coeffs }
    }

    pub fn from_f64(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::with_val(128, c)).collect())
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `(p(z), p'(z), sum |c_i| |z|^i)`.
    fn eval_with_derivative(&self, z: &Complex, bits: u32) -> (Complex, Complex, f64) {
        let mut p = Complex::new(bits);
        let mut dp = Complex::new(bits);
        let mut scale = 0.0;
        let az = magnitude(z);
        for c in self.coeffs.iter().rev() {
            dp *= z;
            dp += &p;
            p *= z;
            p += c;
            scale = scale * az + magnitude(c);
        }
        (p, dp, scale)
    }

    pub fn eval(&self, z: &Complex, bits: u32) -> Complex {
        self.eval_with_derivative(z, bits).0
    }
}

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
const START_ANGLE: f64 = 0.4;
const MAX_SWEEPS: usize = 500;

/// All roots by simultaneous Aberth–Ehrlich iteration.
///
/// Starts from a circle of radius `1 + max |c_i / c_n|` with golden-angle
/// spacing. A root stops moving once its update is below
/// `10^(1-precision)` relative to its size or its residual is at the
/// rounding level.
pub fn numeric_roots(p: &NumPoly, precision: u32) -> Result<Vec<Complex>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeError("numeric_roots needs degree >= 1".into()));
    }
    let bits = work_bits(precision.max(15));
    let lead = Complex::with_val(bits, &p.coeffs[n]);
    let radius = 1.0
        + p.coeffs[..n]
            .iter()
            .map(|c| magnitude(&Complex::with_val(bits, c / &lead)))
            .fold(0.0, f64::max);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let t = START_ANGLE + GOLDEN_ANGLE * k as f64;
            Complex::with_val(bits, (radius * t.cos(), radius * t.sin()))
        })
        .collect();
    let step_tol = 10f64.powi(1 - precision.max(15) as i32);
    let eps = Float::with_val(64, Float::i_exp(1, 1 - bits as i32)).to_f64();
    let mut done = vec![false; n];
    let mut last_update = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let mut max_update: f64 = 0.0;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (pv, dpv, scale) = p.eval_with_derivative(&z[k], bits);
            if magnitude(&pv) <= 4.0 * (n as f64) * eps * scale {
                done[k] = true;
                continue;
            }
            let mut sum = Complex::new(bits);
            for j in 0..n {
                if j != k {
                    let d = Complex::with_val(bits, &z[k] - &z[j]);
                    if !d.is_zero() {
                        sum += d.recip();
                    }
                }
            }
            let w = if dpv.is_zero() {
                Complex::with_val(bits, (eps.sqrt(), eps.sqrt()))
            } else {
                let ratio = Complex::with_val(bits, &pv / &dpv);
                let denom = Complex::with_val(bits, 1) - Complex::with_val(bits, &ratio * &sum);
                if denom.is_zero() {
                    ratio
                } else {
                    ratio / denom
                }
            };
            let size = magnitude(&w);
            z[k] -= &w;
            max_update = max_update.max(size);
            if size < step_tol * magnitude(&z[k]).max(1.0) {
                done[k] = true;
            }
        }
        last_update = max_update;
        if done.iter().all(|d| *d) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        last_update,
        best: z.iter().map(to_pair).collect(),
    })
}

/// Groups roots closer than `10^(-precision/2)` into one root with a
/// multiplicity; the representative is the cluster mean.
pub fn cluster_roots(roots: &[Complex], precision: u32) -> Vec<(Complex, u32)> {
    let tol = 10f64.powf(-(precision as f64) / 2.0);
    let mut out: Vec<(Complex, u32, Vec<usize>)> = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let hit = out.iter_mut().find(|(c, m, _)| {
            let mean = Complex::with_val(r.prec().0, c / *m);
            magnitude(&Complex::with_val(r.prec().0, &mean - r)) < tol * (1.0 + magnitude(r))
        });
        match hit {
            Some((sum, m, members)) => {
                *sum += r;
                *m += 1;
                members.push(i);
            }
            None => out.push((r.clone(), 1, vec![i])),
        }
    }
    out.into_iter()
        .map(|(s, m, _)| (Complex::with_val(s.prec().0, &s / m), m))
        .collect()
}
