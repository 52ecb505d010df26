use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rug::ops::PowAssign;
use rug::Complex;

use super::{fmt_rational_coeff, Rational};
use crate::error::{Error, Result};
use crate::numeric::{complex_from_rational, ParamValues};

/// A monomial in the parameter symbols, stored as `(name, exponent)` pairs
/// sorted by name with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PMono(Vec<(String, u32)>);

impl PMono {
    pub fn one() -> Self {
        PMono(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        PMono(vec![(name.to_string(), 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u32)>) -> Self {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (n, e) in pairs {
            *map.entry(n).or_default() += e;
        }
        PMono(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &PMono) -> PMono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b.clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a.0.clone(), a.1 + b.1));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        PMono(out)
    }

    /// `self / other` if every exponent of `other` fits.
    fn div(&self, other: &PMono) -> Option<PMono> {
        let mut out = Vec::new();
        for (n, e) in &self.0 {
            let d = other.exponent(n);
            if d > *e {
                return None;
            }
            if e - d > 0 {
                out.push((n.clone(), e - d));
            }
        }
        if other.0.iter().any(|(n, _)| self.exponent(n) == 0) {
            return None;
        }
        Some(PMono(out))
    }

    fn gcd(&self, other: &PMono) -> PMono {
        PMono(
            self.0
                .iter()
                .filter_map(|(n, e)| {
                    let m = (*e).min(other.exponent(n));
                    (m > 0).then(|| (n.clone(), m))
                })
                .collect(),
        )
    }
}

/// Graded lexicographic order; parameters earlier in the alphabet rank higher.
impl Ord for PMono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for PMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial in named parameters with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<PMono, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(PMono::one(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn param(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(PMono::var(name), Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PMono, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: PMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// True when no parameter appears (zero counts as constant).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(PMono::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&PMono::one()).cloned()
        } else {
            None
        }
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&PMono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(PMono::degree).max().unwrap_or(0)
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
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

    /// Simultaneous substitution of parameters by parameter polynomials.
    pub fn substitute(&self, bindings: &BTreeMap<String, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut term = ParamPoly::constant(c.clone());
            let mut rest = Vec::new();
            for (n, e) in &m.0 {
                match bindings.get(n) {
                    Some(v) => term = &term * &v.pow(*e),
                    None => rest.push((n.clone(), *e)),
                }
            }
            let rest = ParamPoly::from_terms([(PMono(rest), Rational::one())]);
            out = &out + &(&term * &rest);
        }
        out
    }

    /// Exact value at a rational point. Every parameter must be bound.
    pub fn eval_rational(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (n, e) in &m.0 {
                let v = values
                    .get(n)
                    .ok_or_else(|| Error::UnboundSymbol(n.clone()))?;
                t *= num_traits::pow(v.clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, values: &ParamValues, bits: u32) -> Result<Complex> {
        let mut acc = Complex::new(bits);
        for (m, c) in &self.terms {
            let mut t = complex_from_rational(c, bits);
            for (n, e) in &m.0 {
                let v = values
                    .get(n)
                    .ok_or_else(|| Error::UnboundSymbol(n.clone()))?;
                let mut p = Complex::with_val(bits, v);
                p.pow_assign(*e);
                t *= p;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`; fails with `NotDivisible` on a nonzero remainder.
    pub fn divide_exact(&self, d: &ParamPoly) -> Result<ParamPoly> {
        let (dm, dc) = d
            .leading_term()
            .ok_or_else(|| Error::NotDivisible("division by zero parameter polynomial".into()))?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&dm).ok_or_else(|| {
                Error::NotDivisible(format!("{} does not divide {}", d, self))
            })?;
            let t = ParamPoly::from_terms([(m, rc / &dc)]);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// Positive rational `c` such that `self / c` has integer coefficients with gcd 1.
    pub fn rational_content(&self) -> Rational {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rational::one()
        } else {
            Rational::new(num, den)
        }
    }

    /// Largest parameter monomial dividing every term.
    pub fn monomial_content(&self) -> PMono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return PMono::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &PMono) -> Option<ParamPoly> {
        let mut out = ParamPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(k.div(m)?, c.clone());
        }
        Some(out)
    }

    /// Sign of the leading rational coefficient (0 for the zero polynomial).
    pub fn leading_sign(&self) -> i32 {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::from_int(n)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $f:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned!(ParamPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let (sign, body) = fmt_rational_coeff(c, (!m.is_one()).then(|| m.to_string()));
            if first {
                if sign {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if sign { "-" } else { "+" })?;
            }
            write!(f, "{body}")?;
            first = false;
        }
        Ok(())
    }
}
