use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{ParamPoly, Rational};

/// Exact expression built from rationals, parameters, field operations,
/// principal n-th roots and roots of unity.
///
/// Values are immutable and cheap to clone; sub-expressions are shared.
/// Every constructor returns a canonical tree, so structurally equal
/// results compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadicalExpr(Arc<Node>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Rational(Rational),
    Param(String),
    Add(Vec<RadicalExpr>),
    Mul(Vec<RadicalExpr>),
    Neg(RadicalExpr),
    Div(RadicalExpr, RadicalExpr),
    IntPow(RadicalExpr, i32),
    /// Principal `n`-th root, `n >= 2`.
    Root(RadicalExpr, u32),
    /// `exp(2*pi*i*j/n)` with `0 <= j < n`.
    UnityRoot(u32, u32),
    /// `primary` unless `guard` is numerically zero, then `fallback`.
    Select {
        guard: RadicalExpr,
        primary: RadicalExpr,
        fallback: RadicalExpr,
    },
}

impl fmt::Debug for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalExpr({self})")
    }
}

impl RadicalExpr {
    /// Wraps a node without any canonicalisation.
    pub fn raw(node: Node) -> Self {
        RadicalExpr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn ptr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn rational(q: Rational) -> Self {
        Self::raw(Node::Rational(q))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn param(name: &str) -> Self {
        Self::raw(Node::Param(name.to_string()))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self.node() {
            Node::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_zero())
    }

    pub fn from_param_poly(p: &ParamPoly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut fs = vec![Self::rational(c.clone())];
                for (name, e) in m.factors() {
                    fs.push(Self::pow(&Self::param(name), *e as i32));
                }
                Self::mul(fs)
            })
            .collect();
        Self::add(terms)
    }

    /// Splits off the rational coefficient of a product.
    fn coeff_split(&self) -> (Rational, RadicalExpr) {
        match self.node() {
            Node::Rational(q) => (q.clone(), Self::one()),
            Node::Mul(fs) => match fs[0].node() {
                Node::Rational(q) => {
                    let rest = if fs.len() == 2 {
                        fs[1].clone()
                    } else {
                        Self::raw(Node::Mul(fs[1..].to_vec()))
                    };
                    (q.clone(), rest)
                }
                _ => (Rational::one(), self.clone()),
            },
            _ => (Rational::one(), self.clone()),
        }
    }

    pub fn add(terms: Vec<RadicalExpr>) -> Self {
        let mut flat = Vec::new();
        for t in terms {
            match t.node() {
                Node::Add(ts) => flat.extend(ts.iter().cloned()),
                _ => flat.push(t),
            }
        }
        let mut constant = Rational::zero();
        let mut keys: Vec<(RadicalExpr, Rational)> = Vec::new();
        let mut index: HashMap<RadicalExpr, usize> = HashMap::new();
        for t in flat {
            let (c, k) = t.coeff_split();
            if k.as_rational().is_some() {
                constant += c;
                continue;
            }
            match index.get(&k) {
                Some(&i) => keys[i].1 += c,
                None => {
                    index.insert(k.clone(), keys.len());
                    keys.push((k, c));
                }
            }
        }
        let mut out = Vec::new();
        if !constant.is_zero() {
            out.push(Self::rational(constant));
        }
        for (k, c) in keys {
            if !c.is_zero() {
                out.push(Self::scale(&k, &c));
            }
        }
        match out.len() {
            0 => Self::zero(),
            1 => out.pop().unwrap(),
            _ => Self::raw(Node::Add(out)),
        }
    }

    pub fn sub(a: &RadicalExpr, b: &RadicalExpr) -> Self {
        Self::add(vec![a.clone(), Self::neg(b)])
    }

    pub fn neg(a: &RadicalExpr) -> Self {
        Self::scale(a, &-Rational::one())
    }

    pub fn scale(a: &RadicalExpr, c: &Rational) -> Self {
        Self::mul(vec![Self::rational(c.clone()), a.clone()])
    }

    pub fn mul(factors: Vec<RadicalExpr>) -> Self {
        let mut coeff = Rational::one();
        let mut bases: Vec<(RadicalExpr, i32)> = Vec::new();
        let mut index: HashMap<RadicalExpr, usize> = HashMap::new();
        let mut stack: Vec<RadicalExpr> = factors.into_iter().rev().collect();
        while let Some(f) = stack.pop() {
            match f.node() {
                Node::Rational(q) => coeff *= q,
                Node::Mul(fs) => stack.extend(fs.iter().rev().cloned()),
                Node::Neg(x) => {
                    coeff = -coeff;
                    stack.push(x.clone());
                }
                _ => {
                    let (b, k) = match f.node() {
                        Node::IntPow(b, k) => (b.clone(), *k),
                        _ => (f.clone(), 1),
                    };
                    match index.get(&b) {
                        Some(&i) => bases[i].1 += k,
                        None => {
                            index.insert(b.clone(), bases.len());
                            bases.push((b, k));
                        }
                    }
                }
            }
        }
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut rest = Vec::new();
        for (b, k) in bases {
            if k == 0 {
                continue;
            }
            let p = Self::pow(&b, k);
            match p.node() {
                Node::Rational(q) => coeff *= q,
                Node::Mul(fs) => {
                    for f in fs {
                        match f.node() {
                            Node::Rational(q) => coeff *= q,
                            _ => rest.push(f.clone()),
                        }
                    }
                }
                _ => rest.push(p),
            }
        }
        if coeff.is_zero() {
            return Self::zero();
        }
        if rest.is_empty() {
            return Self::rational(coeff);
        }
        if rest.len() == 1 {
            if coeff.is_one() {
                return rest.pop().unwrap();
            }
            if let Node::Add(ts) = rest[0].node() {
                return Self::add(ts.iter().map(|t| Self::scale(t, &coeff)).collect());
            }
        }
        if !coeff.is_one() {
            rest.insert(0, Self::rational(coeff));
        }
        Self::raw(Node::Mul(rest))
    }

    pub fn div(a: &RadicalExpr, b: &RadicalExpr) -> Self {
        if let Some(q) = b.as_rational() {
            if !q.is_zero() {
                return Self::scale(a, &q.recip());
            }
            return Self::raw(Node::Div(a.clone(), b.clone()));
        }
        if a.is_zero() {
            return Self::zero();
        }
        if let Node::Div(n, d) = a.node() {
            return Self::div(n, &Self::mul(vec![d.clone(), b.clone()]));
        }
        if let Node::Div(n, d) = b.node() {
            return Self::div(&Self::mul(vec![a.clone(), d.clone()]), n);
        }
        let (cb, rb) = b.coeff_split();
        if !cb.is_one() {
            return Self::scale(&Self::div(a, &rb), &cb.recip());
        }
        let (ca, ra) = a.coeff_split();
        if !ca.is_one() {
            return Self::scale(&Self::div(&ra, b), &ca);
        }
        let mut num = power_factors(a);
        let mut den = Vec::new();
        for (base, k) in power_factors(b) {
            match num.iter_mut().find(|(nb, _)| *nb == base) {
                Some(entry) => entry.1 -= k,
                None => den.push((base, k)),
            }
        }
        for (base, k) in num.iter_mut() {
            if *k < 0 {
                den.push((base.clone(), -*k));
                *k = 0;
            }
        }
        let build = |fs: Vec<(RadicalExpr, i32)>| {
            Self::mul(fs.into_iter().map(|(b, k)| Self::pow(&b, k)).collect())
        };
        let (n, d) = (build(num), build(den));
        if d.as_rational().is_some() {
            return Self::div(&n, &d);
        }
        Self::raw(Node::Div(n, d))
    }

    pub fn pow(b: &RadicalExpr, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        if k == 1 {
            return b.clone();
        }
        match b.node() {
            Node::Rational(q) => {
                if q.is_zero() && k < 0 {
                    return Self::raw(Node::IntPow(b.clone(), k));
                }
                Self::rational(pow_rational(q, k))
            }
            Node::IntPow(c, j) => Self::pow(c, j * k),
            Node::Root(r, n) if k > 0 && k as u32 >= *n => {
                let n = *n as i32;
                Self::mul(vec![Self::pow(r, k / n), Self::pow(b, k % n)])
            }
            Node::UnityRoot(n, j) => {
                let e = (*j as i64 * k as i64).rem_euclid(*n as i64) as u32;
                Self::unity(*n, e)
            }
            Node::Mul(_) => {
                let (c, rest) = b.coeff_split();
                if c.is_one() {
                    Self::raw(Node::IntPow(b.clone(), k))
                } else {
                    Self::mul(vec![
                        Self::rational(pow_rational(&c, k)),
                        Self::pow(&rest, k),
                    ])
                }
            }
            _ => Self::raw(Node::IntPow(b.clone(), k)),
        }
    }

    pub fn sqrt(b: &RadicalExpr) -> Self {
        Self::root(b, 2)
    }

    pub fn cbrt(b: &RadicalExpr) -> Self {
        Self::root(b, 3)
    }

    /// Principal `n`-th root. Positive rational `n`-th powers are pulled out
    /// of the radicand.
    pub fn root(b: &RadicalExpr, n: u32) -> Self {
        assert!(n >= 1, "root index must be positive");
        if n == 1 {
            return b.clone();
        }
        let (c, rest) = b.coeff_split();
        if c.is_zero() {
            return Self::zero();
        }
        let (outside, inside) = extract_power(&c, n);
        let radicand = Self::scale(&rest, &inside);
        let inner = match radicand.as_rational() {
            Some(q) if q.is_one() => Self::one(),
            _ => Self::raw(Node::Root(radicand, n)),
        };
        Self::scale(&inner, &outside)
    }

    pub fn unity(n: u32, j: u32) -> Self {
        let j = j % n;
        if j == 0 {
            return Self::one();
        }
        let g = n.gcd(&j);
        let (n, j) = (n / g, j / g);
        if n == 2 {
            return Self::int(-1);
        }
        Self::raw(Node::UnityRoot(n, j))
    }

    pub fn select(guard: &RadicalExpr, primary: &RadicalExpr, fallback: &RadicalExpr) -> Self {
        if let Some(q) = guard.as_rational() {
            return if q.is_zero() {
                fallback.clone()
            } else {
                primary.clone()
            };
        }
        if primary == fallback {
            return primary.clone();
        }
        Self::raw(Node::Select {
            guard: guard.clone(),
            primary: primary.clone(),
            fallback: fallback.clone(),
        })
    }

    /// Parameters occurring anywhere in the tree.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Node::Param(p) = n {
                out.insert(p.clone());
            }
        });
        out
    }

    pub fn children(&self) -> Vec<&RadicalExpr> {
        match self.node() {
            Node::Rational(_) | Node::Param(_) | Node::UnityRoot(..) => vec![],
            Node::Add(v) | Node::Mul(v) => v.iter().collect(),
            Node::Neg(a) | Node::IntPow(a, _) | Node::Root(a, _) => vec![a],
            Node::Div(a, b) => vec![a, b],
            Node::Select {
                guard,
                primary,
                fallback,
            } => vec![guard, primary, fallback],
        }
    }

    fn visit(&self, f: &mut impl FnMut(&Node)) {
        f(self.node());
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Number of nodes, counting shared sub-trees once per occurrence.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

/// `e` as a list of `(base, exponent)` factors, ignoring rational
/// coefficients (callers strip them first).
fn power_factors(e: &RadicalExpr) -> Vec<(RadicalExpr, i32)> {
    let one = |f: &RadicalExpr| match f.node() {
        Node::IntPow(b, k) => (b.clone(), *k),
        _ => (f.clone(), 1),
    };
    match e.node() {
        Node::Mul(fs) => fs.iter().map(one).collect(),
        _ => vec![one(e)],
    }
}

pub(crate) fn pow_rational(q: &Rational, k: i32) -> Rational {
    let base = if k < 0 { q.recip() } else { q.clone() };
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Writes `c = outside^n * inside` with `outside > 0` rational and the
/// integer part of `inside` free of small `n`-th power factors.
fn extract_power(c: &Rational, n: u32) -> (Rational, Rational) {
    let sign = if c.is_negative() { -1 } else { 1 };
    let num = c.numer().abs();
    let den = c.denom().clone();
    // c = sign * num * den^(n-1) / den^n
    let m = &num * den.pow(n - 1);
    let (s, t) = split_integer_power(&m, n);
    let outside = Rational::new(s, den);
    let inside = Rational::from_integer(t * sign);
    (outside, inside)
}

fn split_integer_power(m: &BigInt, n: u32) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut t = BigInt::one();
    let mut rest = m.clone();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(20_000u32);
    while p <= limit && &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / n);
            t *= p.pow(e % n);
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        let r = rest.nth_root(n);
        if r.pow(n) == rest {
            s *= r;
        } else {
            t *= rest;
        }
    }
    debug_assert_eq!(s.pow(n) * &t, *m);
    (s, t)
}

fn is_negative_term(e: &RadicalExpr) -> bool {
    match e.node() {
        Node::Rational(q) => q.is_negative(),
        Node::Mul(fs) => fs[0].as_rational().is_some_and(|q| q.is_negative()),
        Node::Neg(_) => true,
        _ => false,
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders as a factor of a product: sums, signed values and fractions
/// get parentheses.
fn factor_text(e: &RadicalExpr) -> String {
    let needs = match e.node() {
        Node::Add(_) | Node::Neg(_) | Node::Div(..) => true,
        Node::Rational(q) => !q.is_integer() || q.is_negative(),
        Node::Mul(_) => is_negative_term(e),
        Node::Select { primary, .. } => return factor_text(primary),
        _ => false,
    };
    if needs {
        format!("({e})")
    } else {
        e.to_string()
    }
}

/// Renders as the base of a power or a denominator.
fn atom_text(e: &RadicalExpr) -> String {
    match e.node() {
        Node::Param(_) | Node::Root(..) | Node::UnityRoot(..) => e.to_string(),
        Node::Rational(q) if q.is_integer() && !q.is_negative() => e.to_string(),
        Node::Select { primary, .. } => atom_text(primary),
        _ => format!("({e})"),
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Node::Param(p) => write!(f, "{p}"),
            Node::Add(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 && is_negative_term(t) {
                        write!(f, "-{}", RadicalExpr::neg(t))?;
                    } else if i > 0 {
                        write!(f, "+{t}")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Node::Mul(fs) => {
                let mut rest: &[RadicalExpr] = fs;
                if let Some(q) = fs[0].as_rational() {
                    rest = &fs[1..];
                    let a = q.abs();
                    if q.is_negative() {
                        write!(f, "-")?;
                    }
                    if !a.is_one() {
                        if a.is_integer() {
                            write!(f, "{}*", a.numer())?;
                        } else {
                            write!(f, "({}/{})*", a.numer(), a.denom())?;
                        }
                    }
                }
                let parts: Vec<String> = rest.iter().map(factor_text).collect();
                write!(f, "{}", parts.join("*"))
            }
            Node::Neg(a) => write!(f, "-{}", factor_text(a)),
            Node::Div(a, b) => write!(f, "{}/{}", factor_text(a), atom_text(b)),
            Node::IntPow(b, k) if *k < 0 => write!(f, "{}^({k})", atom_text(b)),
            Node::IntPow(b, k) => write!(f, "{}^{k}", atom_text(b)),
            Node::Root(b, 2) => write!(f, "sqrt({b})"),
            Node::Root(b, 3) => write!(f, "cbrt({b})"),
            Node::Root(b, n) => write!(f, "root({b}, {n})"),
            Node::UnityRoot(n, j) => write!(f, "omega({n}, {j})"),
            Node::Select { primary, .. } => write!(f, "{primary}"),
        }
    }
}

impl From<Rational> for RadicalExpr {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for RadicalExpr {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<&ParamPoly> for RadicalExpr {
    fn from(p: &ParamPoly) -> Self {
        Self::from_param_poly(p)
    }
}

impl std::ops::Add for &RadicalExpr {
    type Output = RadicalExpr;
    fn add(self, rhs: &RadicalExpr) -> RadicalExpr {
        RadicalExpr::add(vec![self.clone(), rhs.clone()])
    }
}

impl std::ops::Sub for &RadicalExpr {
    type Output = RadicalExpr;
    fn sub(self, rhs: &RadicalExpr) -> RadicalExpr {
        RadicalExpr::sub(self, rhs)
    }
}

impl std::ops::Mul for &RadicalExpr {
    type Output = RadicalExpr;
    fn mul(self, rhs: &RadicalExpr) -> RadicalExpr {
        RadicalExpr::mul(vec![self.clone(), rhs.clone()])
    }
}

impl std::ops::Div for &RadicalExpr {
    type Output = RadicalExpr;
    fn div(self, rhs: &RadicalExpr) -> RadicalExpr {
        RadicalExpr::div(self, rhs)
    }
}

impl std::ops::Neg for &RadicalExpr {
    type Output = RadicalExpr;
    fn neg(self) -> RadicalExpr {
        RadicalExpr::neg(self)
    }
}
