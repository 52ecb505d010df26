use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, ParamPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn ident(name: &str) -> Expr {
        Expr::Ident(name.to_string())
    }

    pub fn num(n: i64) -> Expr {
        Expr::Num(n.into())
    }

    pub fn rational(q: &Rational) -> Expr {
        let n = Expr::Num(q.numer().clone());
        let n = if q.numer() < &BigInt::zero() {
            Expr::Neg(Box::new(Expr::Num(-q.numer().clone())))
        } else {
            n
        };
        if q.is_integer() {
            n
        } else {
            Expr::Div(Box::new(n), Box::new(Expr::Num(q.denom().clone())))
        }
    }

    pub fn identifiers(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Ident(n) => {
                out.insert(n.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.identifiers(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.identifiers(out);
                b.identifiers(out);
            }
        }
    }

    pub fn contains_ident(&self, name: &str) -> bool {
        let mut s = BTreeSet::new();
        self.identifiers(&mut s);
        s.contains(name)
    }

    /// Children in evaluation order.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Num(_) | Expr::Ident(_) => vec![],
            Expr::Neg(a) | Expr::Pow(a, _) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Every subtree, parents before children.
    pub fn subtrees(&self) -> Vec<&Expr> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let kids = out[i].children();
            out.extend(kids);
            i += 1;
        }
        out
    }

    /// Replaces every occurrence of `target` (structurally) by `with`.
    pub fn replace(&self, target: &Expr, with: &Expr) -> Expr {
        if self == target {
            return with.clone();
        }
        let r = |e: &Expr| Box::new(e.replace(target, with));
        match self {
            Expr::Num(_) | Expr::Ident(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(r(a)),
            Expr::Pow(a, k) => Expr::Pow(r(a), *k),
            Expr::Add(a, b) => Expr::Add(r(a), r(b)),
            Expr::Sub(a, b) => Expr::Sub(r(a), r(b)),
            Expr::Mul(a, b) => Expr::Mul(r(a), r(b)),
            Expr::Div(a, b) => Expr::Div(r(a), r(b)),
        }
    }

    /// Expands to a polynomial; identifiers named in `unknowns` become the
    /// two unknowns, all others are parameters.
    pub fn to_poly(&self, unknowns: [&str; 2]) -> Result<BiPoly> {
        let zero = BiPoly::zero_in(unknowns[0], unknowns[1]);
        self.expand(&zero)
    }

    fn expand(&self, zero: &BiPoly) -> Result<BiPoly> {
        Ok(match self {
            Expr::Num(n) => zero.constant_like(ParamPoly::constant(Rational::from_integer(n.clone()))),
            Expr::Ident(name) => match zero.unknown_index(name) {
                Some(0) => zero.var_x(),
                Some(_) => zero.var_y(),
                None => zero.constant_like(ParamPoly::param(name)),
            },
            Expr::Neg(a) => -&a.expand(zero)?,
            Expr::Add(a, b) => &a.expand(zero)? + &b.expand(zero)?,
            Expr::Sub(a, b) => &a.expand(zero)? - &b.expand(zero)?,
            Expr::Mul(a, b) => &a.expand(zero)? * &b.expand(zero)?,
            Expr::Pow(a, k) => a.expand(zero)?.pow(*k),
            Expr::Div(a, b) => {
                let d = b.expand(zero)?;
                let c = (d.is_constant())
                    .then(|| d.coeff(0, 0).constant_value())
                    .flatten()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| {
                        Error::UnsupportedShape(format!(
                            "division is only allowed by a nonzero rational constant, got {d}"
                        ))
                    })?;
                a.expand(zero)?.scale(&c.recip())
            }
        })
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(_) | Expr::Ident(_) => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| {
            if prec(e) < min {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Ident(n) => write!(f, "{n}"),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, 4)),
            Expr::Add(a, b) => write!(f, "{}+{}", a, wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{}-{}", a, wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", wrap(a, 2), wrap(b, 3)),
            Expr::Pow(a, k) => write!(f, "{}^{}", wrap(a, 5), k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    /// `lhs - rhs` as a polynomial.
    pub fn to_poly(&self, unknowns: [&str; 2]) -> Result<BiPoly> {
        Ok(&self.lhs.to_poly(unknowns)? - &self.rhs.to_poly(unknowns)?)
    }

    pub fn difference(&self) -> Expr {
        Expr::Sub(Box::new(self.lhs.clone()), Box::new(self.rhs.clone()))
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Equation {
        Equation {
            lhs: f(&self.lhs),
            rhs: f(&self.rhs),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

/// Parsed equations with every identifier classified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemStatement {
    pub equations: Vec<Equation>,
    pub unknowns: Vec<String>,
    pub parameters: Vec<String>,
}

impl ProblemStatement {
    /// Names for the two unknown slots of every [`BiPoly`] built from this
    /// statement; a missing second unknown gets an unused placeholder name.
    pub fn unknown_slots(&self) -> [String; 2] {
        let first = self.unknowns[0].clone();
        let second = match self.unknowns.get(1) {
            Some(s) => s.clone(),
            None => ["y", "z", "w", "v", "u", "t"]
                .iter()
                .map(|s| s.to_string())
                .find(|c| c != &first && !self.parameters.contains(c))
                .unwrap_or_else(|| "y9".into()),
        };
        [first, second]
    }
}

impl fmt::Display for ProblemStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self.equations.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", eqs.join("; "))
    }
}
