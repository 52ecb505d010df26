//! Swap symmetry of polynomials in two unknowns and the rewrite into the
//! elementary symmetric polynomials `s1 = x + y`, `s2 = x*y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{divide_exact, BiPoly, Mono2, ParamPoly, Rational};

/// Unknown names used for the elementary symmetric variables.
pub const SIGMA_NAMES: [&str; 2] = ["s1", "s2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Symmetric,
    AntiSymmetric,
    Neither,
    Zero,
}

/// Polynomial in `s1`, `s2` with parameter coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaPoly(BiPoly);

impl SigmaPoly {
    pub fn zero() -> Self {
        SigmaPoly(BiPoly::zero_in(SIGMA_NAMES[0], SIGMA_NAMES[1]))
    }

    pub fn s1() -> Self {
        Self::zero().0.var_x().into()
    }

    pub fn s2() -> Self {
        Self::zero().0.var_y().into()
    }

    pub fn constant(c: impl Into<ParamPoly>) -> Self {
        SigmaPoly(Self::zero().0.constant_like(c.into()))
    }

    /// Builds from `(deg_s1, deg_s2, coeff)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, ParamPoly)>) -> Self {
        SigmaPoly(BiPoly::from_terms(
            SIGMA_NAMES,
            terms.into_iter().map(|(i, j, c)| (Mono2::new(i, j), c)),
        ))
    }

    /// The underlying polynomial with unknowns `s1`, `s2`.
    pub fn as_bipoly(&self) -> &BiPoly {
        &self.0
    }

    pub fn into_bipoly(self) -> BiPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, i: u32, j: u32) -> ParamPoly {
        self.0.coeff(i, j)
    }

    pub fn degree_s1(&self) -> u32 {
        self.0.degree_x()
    }

    pub fn degree_s2(&self) -> u32 {
        self.0.degree_y()
    }
}

impl From<BiPoly> for SigmaPoly {
    /// Reinterprets the two unknowns as `s1`, `s2`.
    fn from(p: BiPoly) -> Self {
        SigmaPoly(p.with_names(SIGMA_NAMES[0], SIGMA_NAMES[1]))
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn classify(p: &BiPoly) -> Result<SymmetryClass> {
    if p.is_zero() {
        return Ok(SymmetryClass::Zero);
    }
    if (p.degree_x() == 0) != (p.degree_y() == 0) {
        return Err(Error::ArityError(format!(
            "{p} involves only one unknown"
        )));
    }
    let s = p.swap();
    Ok(if &s == p {
        SymmetryClass::Symmetric
    } else if (&s + p).is_zero() {
        SymmetryClass::AntiSymmetric
    } else {
        SymmetryClass::Neither
    })
}

fn is_class(p: &BiPoly, class: SymmetryClass) -> bool {
    matches!(classify(p), Ok(c) if c == class)
}

/// `r` with `(x - y) * r = q` for anti-symmetric `q`.
pub fn antisym_factor(q: &BiPoly) -> Result<BiPoly> {
    if !is_class(q, SymmetryClass::AntiSymmetric) {
        return Err(Error::ClassError(format!("{q} is not anti-symmetric")));
    }
    let d = &q.var_x() - &q.var_y();
    divide_exact(q, &d).map_err(|e| Error::InvariantViolation(e.to_string()))
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Rewrites a symmetric polynomial in `s1`, `s2`.
///
/// Each homogeneous part of degree `d` is matched against
/// `s1^(d-2j) * s2^j`, whose coefficient on `x^(d-k) y^k` is
/// `C(d-2j, k-j)`. Ordered by `k`, the system is unit lower triangular.
pub fn to_elementary(p: &BiPoly) -> Result<SigmaPoly> {
    match classify(p) {
        Ok(SymmetryClass::Zero) => return Ok(SigmaPoly::zero()),
        Ok(SymmetryClass::Symmetric) => {}
        Ok(_) => return Err(Error::ClassError(format!("{p} is not symmetric"))),
        Err(_) if p.is_constant() => {}
        Err(e) => return Err(e),
    }
    let mut terms = Vec::new();
    for d in 0..=p.total_degree() {
        let mut e: Vec<ParamPoly> = Vec::new();
        for j in 0..=d / 2 {
            let mut v = p.coeff(d - j, j);
            for (i, ei) in e.iter().enumerate() {
                let i = i as u32;
                let c = Rational::from_integer(binomial(d - 2 * i, j - i));
                v = &v - &ei.scale(&c);
            }
            e.push(v);
        }
        for (j, c) in e.into_iter().enumerate() {
            let j = j as u32;
            terms.push((d - 2 * j, j, c));
        }
    }
    let s = SigmaPoly::from_terms(terms);
    if from_elementary(&s).with_names(p.names()[0], p.names()[1]) != *p {
        return Err(Error::ClassError(format!("{p} has no elementary form")));
    }
    Ok(s)
}

/// Expands `s1 = x + y`, `s2 = x*y`.
pub fn from_elementary(s: &SigmaPoly) -> BiPoly {
    let x = BiPoly::x();
    let y = BiPoly::y();
    let s1 = &x + &y;
    let s2 = &x * &y;
    let mut out = BiPoly::zero();
    for (m, c) in s.0.terms() {
        out = &out + &(&s1.pow(m.x) * &s2.pow(m.y)).scale_param(c);
    }
    out
}

/// `x^n + y^n` in `s1`, `s2` by the closed form
/// `sum_i (-1)^i n/(n-i) C(n-i, i) s1^(n-2i) s2^i`; `s_0 = 2`.
pub fn power_sum(n: i64) -> Result<SigmaPoly> {
    if n < 0 {
        return Err(Error::DomainError(format!("power sum index {n} is negative")));
    }
    if n == 0 {
        return Ok(SigmaPoly::constant(ParamPoly::from_int(2)));
    }
    let n = n as u32;
    let terms = (0..=n / 2).map(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = Rational::new(
            BigInt::from(sign * n as i64) * binomial(n - i, i),
            BigInt::from(n - i),
        );
        (n - 2 * i, i, ParamPoly::constant(c))
    });
    Ok(SigmaPoly::from_terms(terms))
}

/// `x^n + y^n` by `s_k = s1 s_(k-1) - s2 s_(k-2)`.
pub fn power_sum_recurrence(n: i64) -> Result<SigmaPoly> {
    if n < 0 {
        return Err(Error::DomainError(format!("power sum index {n} is negative")));
    }
    let s1 = SigmaPoly::s1().0;
    let s2 = SigmaPoly::s2().0;
    let mut prev = SigmaPoly::constant(ParamPoly::from_int(2)).0;
    let mut cur = s1.clone();
    if n == 0 {
        return Ok(SigmaPoly(prev));
    }
    for _ in 1..n {
        let next = &(&s1 * &cur) - &(&s2 * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(SigmaPoly(cur))
}
