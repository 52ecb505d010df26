use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::ops::PowAssign;
use rug::Complex;

use super::{fmt_rational_coeff, PMono, ParamPoly, Rational};
use crate::error::{Error, Result};
use crate::numeric::{work_bits, ParamValues};

/// Exponent pair `(deg_x, deg_y)` ordered graded-lexicographically with `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono2 {
    pub x: u32,
    pub y: u32,
}

impl Mono2 {
    pub const fn new(x: u32, y: u32) -> Self {
        Mono2 { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    pub fn swapped(&self) -> Self {
        Mono2 { x: self.y, y: self.x }
    }
}

impl Ord for Mono2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
            .then(self.y.cmp(&other.y))
    }
}

impl PartialOrd for Mono2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in two unknowns with [`ParamPoly`] coefficients.
///
/// A univariate polynomial is a `BiPoly` in which the second unknown never
/// appears. Both unknown names are always declared; arithmetic between
/// polynomials with different names is a [`Error::SymbolMismatch`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    names: [String; 2],
    terms: BTreeMap<Mono2, ParamPoly>,
}

impl Default for BiPoly {
    fn default() -> Self {
        BiPoly::zero()
    }
}

impl BiPoly {
    /// Zero polynomial in the default unknowns `x`, `y`.
    pub fn zero() -> Self {
        Self::zero_in("x", "y")
    }

    pub fn zero_in(first: &str, second: &str) -> Self {
        BiPoly {
            names: [first.to_string(), second.to_string()],
            terms: BTreeMap::new(),
        }
    }

    /// The zero polynomial sharing this polynomial's unknown names.
    pub fn zero_like(&self) -> Self {
        BiPoly {
            names: self.names.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: ParamPoly) -> Self {
        let mut p = self.zero_like();
        p.add_term(Mono2::new(0, 0), c);
        p
    }

    pub fn monomial_like(&self, m: Mono2, c: ParamPoly) -> Self {
        let mut p = self.zero_like();
        p.add_term(m, c);
        p
    }

    /// The first unknown as a polynomial.
    pub fn x() -> Self {
        Self::zero().var_x()
    }

    /// The second unknown as a polynomial.
    pub fn y() -> Self {
        Self::zero().var_y()
    }

    pub fn var_x(&self) -> Self {
        self.monomial_like(Mono2::new(1, 0), ParamPoly::one())
    }

    pub fn var_y(&self) -> Self {
        self.monomial_like(Mono2::new(0, 1), ParamPoly::one())
    }

    pub fn constant(c: impl Into<ParamPoly>) -> Self {
        Self::zero().constant_like(c.into())
    }

    pub fn param(name: &str) -> Self {
        Self::constant(ParamPoly::param(name))
    }

    pub fn from_terms(
        names: [&str; 2],
        terms: impl IntoIterator<Item = (Mono2, ParamPoly)>,
    ) -> Self {
        let mut p = Self::zero_in(names[0], names[1]);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Mono2, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn names(&self) -> [&str; 2] {
        [&self.names[0], &self.names[1]]
    }

    pub fn with_names(&self, first: &str, second: &str) -> Self {
        BiPoly {
            names: [first.to_string(), second.to_string()],
            terms: self.terms.clone(),
        }
    }

    pub fn same_names(&self, other: &BiPoly) -> bool {
        self.names == other.names
    }

    fn check_names(&self, other: &BiPoly) -> Result<()> {
        if self.same_names(other) {
            Ok(())
        } else {
            Err(Error::SymbolMismatch(format!(
                "unknowns ({}, {}) vs ({}, {})",
                self.names[0], self.names[1], other.names[0], other.names[1]
            )))
        }
    }

    /// Index of an unknown name (0 or 1).
    pub fn unknown_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono2, &ParamPoly)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: u32, y: u32) -> ParamPoly {
        self.terms
            .get(&Mono2::new(x, y))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono2::degree).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        if index == 0 {
            self.degree_x()
        } else {
            self.degree_y()
        }
    }

    /// True when the second unknown does not occur.
    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|m| m.y == 0)
    }

    /// True when neither unknown occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.terms.values().flat_map(|c| c.params()).collect()
    }

    /// Ascending coefficients of a polynomial in the first unknown only.
    pub fn univariate_coeffs(&self) -> Result<Vec<ParamPoly>> {
        if !self.is_univariate() {
            return Err(Error::ArityError(format!(
                "{self} depends on {}",
                self.names[1]
            )));
        }
        let mut out = vec![ParamPoly::zero(); self.degree_x() as usize + 1];
        for (m, c) in &self.terms {
            out[m.x as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(names: [&str; 2], coeffs: &[ParamPoly]) -> Self {
        Self::from_terms(
            names,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Mono2::new(i as u32, 0), c.clone())),
        )
    }

    /// Coefficients with respect to one unknown, ascending; each coefficient
    /// only involves the other unknown.
    pub fn coeffs_in(&self, index: usize) -> Vec<BiPoly> {
        let deg = self.degree_in(index) as usize;
        let mut out = vec![self.zero_like(); deg + 1];
        for (m, c) in &self.terms {
            let (k, rest) = if index == 0 {
                (m.x, Mono2::new(0, m.y))
            } else {
                (m.y, Mono2::new(m.x, 0))
            };
            out[k as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Exchanges the roles of the two unknowns: `p(x, y) -> p(y, x)`.
    pub fn swap(&self) -> Self {
        BiPoly {
            names: self.names.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        self.map_coeffs(|p| p * c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.constant_like(ParamPoly::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn checked_add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.check_names(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.check_names(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.check_names(rhs)?;
        let mut out = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(Mono2::new(m1.x + m2.x, m1.y + m2.y), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution of unknowns by polynomials. Unbound unknowns
    /// stay in place. Every bound name must be a declared unknown and every
    /// replacement must use the same unknown names.
    pub fn substitute(&self, bindings: &BTreeMap<String, BiPoly>) -> Result<BiPoly> {
        let mut images: [Option<&BiPoly>; 2] = [None, None];
        for (name, v) in bindings {
            let idx = self.unknown_index(name).ok_or_else(|| {
                Error::SymbolMismatch(format!("`{name}` is not an unknown of {self}"))
            })?;
            self.check_names(v)?;
            images[idx] = Some(v);
        }
        let xs = images[0].cloned().unwrap_or_else(|| self.var_x());
        let ys = images[1].cloned().unwrap_or_else(|| self.var_y());
        let mut xpow = vec![self.constant_like(ParamPoly::one())];
        let mut ypow = xpow.clone();
        for _ in 0..self.degree_x() {
            let next = xpow.last().unwrap() * &xs;
            xpow.push(next);
        }
        for _ in 0..self.degree_y() {
            let next = ypow.last().unwrap() * &ys;
            ypow.push(next);
        }
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let t = (&xpow[m.x as usize] * &ypow[m.y as usize]).scale_param(c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Convenience: substitute the second unknown by `image`.
    pub fn substitute_y(&self, image: &BiPoly) -> BiPoly {
        let mut b = BTreeMap::new();
        b.insert(self.names[1].clone(), image.clone());
        self.substitute(&b).expect("names checked by caller")
    }

    /// Substitute parameters by parameter polynomials (e.g. numeric bindings).
    pub fn substitute_params(&self, bindings: &BTreeMap<String, ParamPoly>) -> BiPoly {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    /// Complex value at a point. `precision` is in significant decimal digits
    /// (at least 15); the evaluation itself runs at a higher working precision.
    pub fn evaluate_numeric(
        &self,
        point: &BTreeMap<String, Complex>,
        params: &ParamValues,
        precision: u32,
    ) -> Result<Complex> {
        let bits = work_bits(precision.max(15));
        let mut vals: [Option<Complex>; 2] = [None, None];
        for (i, name) in self.names.iter().enumerate() {
            if let Some(v) = point.get(name) {
                vals[i] = Some(Complex::with_val(bits, v));
            }
        }
        let mut acc = Complex::new(bits);
        for (m, c) in &self.terms {
            let mut t = c.eval_complex(params, bits)?;
            for (i, e) in [m.x, m.y].into_iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = vals[i]
                    .as_ref()
                    .ok_or_else(|| Error::UnboundSymbol(self.names[i].clone()))?;
                let mut p = v.clone();
                p.pow_assign(e);
                t *= p;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `sum |c_m| |x|^i |y|^j` at a point: the natural magnitude scale for residuals.
    pub fn residual_scale(
        &self,
        point: &BTreeMap<String, Complex>,
        params: &ParamValues,
        precision: u32,
    ) -> Result<f64> {
        let bits = work_bits(precision.max(15));
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = crate::numeric::magnitude(&c.eval_complex(params, bits)?);
            for (i, e) in [m.x, m.y].into_iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = point
                    .get(&self.names[i])
                    .ok_or_else(|| Error::UnboundSymbol(self.names[i].clone()))?;
                t *= crate::numeric::magnitude(v).powi(e as i32);
            }
            s += t;
        }
        Ok(s)
    }

    /// Divides out the rational content and fixes the sign so that the
    /// leading coefficient's leading rational is positive.
    pub fn primitive(&self) -> BiPoly {
        let Some(lead) = self.terms.values().next_back() else {
            return self.clone();
        };
        let mut factor = rational_content_of(self.terms.values()).recip();
        if lead.leading_sign() < 0 {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Largest parameter monomial that divides every coefficient.
    pub fn param_monomial_content(&self) -> PMono {
        let mut content: Option<PMono> = None;
        for c in self.terms.values() {
            let m = c.monomial_content();
            content = Some(match content {
                None => m,
                Some(prev) => gcd_mono(&prev, &m),
            });
        }
        content.unwrap_or_default()
    }

    pub fn div_param_monomial(&self, m: &PMono) -> Option<BiPoly> {
        let mut out = self.zero_like();
        for (k, c) in &self.terms {
            out.add_term(*k, c.div_monomial(m)?);
        }
        Some(out)
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Mono2, ParamPoly> {
        &self.terms
    }
}

fn gcd_mono(a: &PMono, b: &PMono) -> PMono {
    PMono::from_pairs(
        a.factors()
            .iter()
            .map(|(n, e)| (n.clone(), (*e).min(b.exponent(n))))
            .filter(|(_, e)| *e > 0),
    )
}

fn rational_content_of<'a>(polys: impl Iterator<Item = &'a ParamPoly>) -> Rational {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for p in polys {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

/// Arithmetic operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow,
}

/// Second operand of [`arith`]: a polynomial or, for `Pow`, an exponent.
#[derive(Clone, Copy, Debug)]
pub enum Operand<'a> {
    Poly(&'a BiPoly),
    Exponent(u32),
}

/// Exact arithmetic with operand checking.
pub fn arith(op: ArithOp, p: &BiPoly, q: Operand<'_>) -> Result<BiPoly> {
    match (op, q) {
        (ArithOp::Add, Operand::Poly(q)) => p.checked_add(q),
        (ArithOp::Sub, Operand::Poly(q)) => p.checked_sub(q),
        (ArithOp::Mul, Operand::Poly(q)) => p.checked_mul(q),
        (ArithOp::Pow, Operand::Exponent(k)) => Ok(p.pow(k)),
        (op, _) => Err(Error::DomainError(format!(
            "operand kind does not match {op:?}"
        ))),
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    /// Panics on mismatched unknown names; use [`BiPoly::checked_add`] to handle that case.
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.checked_add(rhs).expect("mismatched unknowns")
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.checked_sub(rhs).expect("mismatched unknowns")
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.checked_mul(rhs).expect("mismatched unknowns")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    /// Flat sum of products in descending order, e.g. `x^2+2*x*y+y^2`;
    /// parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let mut unknown_part = Vec::new();
            for (name, e) in [(&self.names[0], m.x), (&self.names[1], m.y)] {
                match e {
                    0 => {}
                    1 => unknown_part.push(name.clone()),
                    _ => unknown_part.push(format!("{name}^{e}")),
                }
            }
            for (pm, v) in c.terms() {
                let mut parts = Vec::new();
                if !pm.is_one() {
                    parts.push(pm.to_string());
                }
                parts.extend(unknown_part.iter().cloned());
                let body = (!parts.is_empty()).then(|| parts.join("*"));
                let (neg, text) = fmt_rational_coeff(v, body);
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { "-" } else { "+" })?;
                }
                write!(f, "{text}")?;
                first = false;
            }
        }
        Ok(())
    }
}
