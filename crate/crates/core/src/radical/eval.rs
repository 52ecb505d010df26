use std::collections::HashMap;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use super::expr::{Node, RadicalExpr};
use crate::error::{Error, Result};
use crate::numeric::{complex_from_rational, magnitude, work_bits, ParamValues};

/// Numeric evaluator with a per-instance cache of shared sub-trees.
///
/// Reuse one evaluator for several expressions at the same parameter point.
pub struct Evaluator<'a> {
    params: &'a ParamValues,
    precision: u32,
    bits: u32,
    memo: HashMap<usize, Complex>,
    // keeps cached nodes alive so their addresses are not reused
    pinned: Vec<RadicalExpr>,
}

impl<'a> Evaluator<'a> {
    pub fn new(params: &'a ParamValues, precision: u32) -> Self {
        let precision = precision.max(15);
        Evaluator {
            params,
            precision,
            bits: work_bits(precision),
            memo: HashMap::new(),
            pinned: Vec::new(),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn eval(&mut self, e: &RadicalExpr) -> Result<Complex> {
        if let Some(v) = self.memo.get(&e.ptr()) {
            return Ok(v.clone());
        }
        let v = self.compute(e)?;
        self.memo.insert(e.ptr(), v.clone());
        self.pinned.push(e.clone());
        Ok(v)
    }

    fn zero(&self) -> Complex {
        Complex::new(self.bits)
    }

    fn compute(&mut self, e: &RadicalExpr) -> Result<Complex> {
        let bits = self.bits;
        Ok(match e.node() {
            Node::Rational(q) => complex_from_rational(q, bits),
            Node::Param(p) => {
                let v = self
                    .params
                    .get(p)
                    .ok_or_else(|| Error::UnboundSymbol(p.clone()))?;
                Complex::with_val(bits, v)
            }
            Node::Add(ts) => {
                let mut acc = self.zero();
                for t in ts {
                    acc += self.eval(t)?;
                }
                acc
            }
            Node::Mul(fs) => {
                let mut acc = Complex::with_val(bits, 1);
                for f in fs {
                    acc *= self.eval(f)?;
                }
                acc
            }
            Node::Neg(a) => -self.eval(a)?,
            Node::Div(a, b) => {
                let d = self.eval(b)?;
                self.check_divisor(&d, b)?;
                self.eval(a)? / d
            }
            Node::IntPow(b, k) => {
                let v = self.eval(b)?;
                if *k < 0 {
                    self.check_divisor(&v, b)?;
                }
                v.pow(*k)
            }
            Node::Root(b, n) => principal_root(self.eval(b)?, *n, bits),
            Node::UnityRoot(n, j) => unity(*n, *j, bits),
            Node::Select {
                guard,
                primary,
                fallback,
            } => {
                let g = self.eval(guard)?;
                if magnitude(&g) < 10f64.powf(-(self.precision as f64) / 2.0) {
                    self.eval(fallback)?
                } else {
                    self.eval(primary)?
                }
            }
        })
    }

    fn check_divisor(&self, d: &Complex, e: &RadicalExpr) -> Result<()> {
        if magnitude(d) < 10f64.powi(-(self.precision as i32)) {
            return Err(Error::NumericSingularity(format!(
                "division by {e}, which is numerically zero"
            )));
        }
        Ok(())
    }
}

/// `|z|^(1/n) * exp(i*Arg(z)/n)` with `Arg` in `(-pi, pi]`.
pub fn principal_root(mut z: Complex, n: u32, bits: u32) -> Complex {
    if z.imag().is_zero() {
        // a signed zero would put negative reals on the wrong side of the cut
        *z.mut_imag() = Float::new(bits);
    }
    if z.is_zero() {
        return Complex::new(bits);
    }
    if n == 2 {
        return z.sqrt();
    }
    let r = Float::with_val(bits, z.abs_ref()).root(n);
    let theta = Float::with_val(bits, z.arg_ref()) / n;
    let (s, c) = theta.sin_cos(Float::new(bits));
    Complex::with_val(bits, (r.clone() * c, r * s))
}

/// `exp(2*pi*i*j/n)`.
pub fn unity(n: u32, j: u32, bits: u32) -> Complex {
    let j = j % n;
    if j == 0 {
        return Complex::with_val(bits, 1);
    }
    if 2 * j == n {
        return Complex::with_val(bits, -1);
    }
    let pi = Float::with_val(bits, Constant::Pi);
    let theta = pi * 2u32 * j / n;
    let (s, c) = theta.sin_cos(Float::new(bits));
    Complex::with_val(bits, (c, s))
}

/// Value of `e` with the parameters bound to `params`.
pub fn eval_radical(e: &RadicalExpr, params: &ParamValues, precision: u32) -> Result<Complex> {
    Evaluator::new(params, precision).eval(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn close(z: &Complex, re: f64, im: f64, tol: f64) -> bool {
        (z.real().to_f64() - re).abs() <= tol && (z.imag().to_f64() - im).abs() <= tol
    }

    #[test]
    fn sqrt_two() {
        let e = RadicalExpr::sqrt(&RadicalExpr::int(2));
        let v = eval_radical(&e, &ParamValues::new(), 30).unwrap();
        assert!(close(&v, std::f64::consts::SQRT_2, 0.0, 1e-15));
    }

    #[test]
    fn principal_cube_root_of_negative() {
        let e = RadicalExpr::cbrt(&RadicalExpr::int(-8));
        let v = eval_radical(&e, &ParamValues::new(), 20).unwrap();
        assert!(close(&v, 1.0, 3f64.sqrt(), 1e-14));
    }

    #[test]
    fn unbound_parameter() {
        let e = RadicalExpr::param("a");
        assert!(matches!(
            eval_radical(&e, &ParamValues::new(), 15),
            Err(Error::UnboundSymbol(_))
        ));
    }

    #[test]
    fn singular_division() {
        let a = RadicalExpr::param("a");
        let e = RadicalExpr::div(&RadicalExpr::one(), &a);
        let mut p = ParamValues::new();
        p.insert("a".into(), Complex::with_val(64, 0));
        assert!(matches!(eval_radical(&e, &p, 15), Err(Error::NumericSingularity(_))));
    }

    #[test]
    fn select_uses_fallback_near_zero() {
        let a = RadicalExpr::param("a");
        let e = RadicalExpr::select(&a, &RadicalExpr::int(1), &RadicalExpr::int(2));
        let mut p = ParamValues::new();
        p.insert("a".into(), Complex::with_val(64, 1e-12));
        assert!(close(&eval_radical(&e, &p, 15).unwrap(), 2.0, 0.0, 0.0));
        p.insert("a".into(), Complex::with_val(64, 1e-3));
        assert!(close(&eval_radical(&e, &p, 15).unwrap(), 1.0, 0.0, 0.0));
    }

    #[test]
    fn unity_values() {
        let w = unity(3, 1, 100);
        assert!(close(&w, -0.5, 3f64.sqrt() / 2.0, 1e-15));
        let half = RadicalExpr::rational(rational(1, 2));
        let v = eval_radical(&RadicalExpr::pow(&half, -2), &ParamValues::new(), 15).unwrap();
        assert!(close(&v, 4.0, 0.0, 0.0));
    }
}
