//! Flat lexicographic representation used for exact division and elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{BiPoly, Mono2, PMono, ParamPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Var {
    Unknown(usize),
    Param(String),
}

/// Polynomial over a fixed variable list; `Vec<u32>` keys compare
/// lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Flat {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Flat {
    pub fn zero() -> Self {
        Flat::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn from_bipoly(p: &BiPoly, order: &[Var]) -> Flat {
        let mut out = Flat::zero();
        for (m, c) in p.raw_terms() {
            for (pm, v) in c.terms() {
                let key = order
                    .iter()
                    .map(|var| match var {
                        Var::Unknown(0) => m.x,
                        Var::Unknown(_) => m.y,
                        Var::Param(n) => pm.exponent(n),
                    })
                    .collect();
                out.add_term(key, v.clone());
            }
        }
        out
    }

    pub fn to_bipoly(&self, order: &[Var], like: &BiPoly) -> BiPoly {
        let mut out = like.zero_like();
        for (k, c) in &self.terms {
            let mut mono = Mono2::default();
            let mut pairs = Vec::new();
            for (var, e) in order.iter().zip(k) {
                match var {
                    Var::Unknown(0) => mono.x = *e,
                    Var::Unknown(_) => mono.y = *e,
                    Var::Param(n) => pairs.push((n.clone(), *e)),
                }
            }
            out.add_term(
                mono,
                ParamPoly::from_terms([(PMono::from_pairs(pairs), c.clone())]),
            );
        }
        out
    }

    pub fn sub(&self, other: &Flat) -> Flat {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Flat) -> Flat {
        let mut out = Flat::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn neg(&self) -> Flat {
        Flat {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    ///
    /// With a single divisor the lex leading term of every intermediate
    /// remainder must be divisible by the leading term of `d`; the first
    /// failure proves a nonzero remainder.
    pub fn div_exact(&self, d: &Flat) -> Option<Flat> {
        let (dm, dc) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Flat::zero();
        while let Some((rm, rc)) = rem.terms.iter().next_back() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let m: Vec<u32> = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let mut t = Flat::zero();
            t.add_term(m, rc / dc);
            rem = rem.sub(&t.mul(d));
            for (k, v) in t.terms {
                quot.add_term(k, v);
            }
        }
        Some(quot)
    }

    pub fn one(nvars: usize) -> Flat {
        let mut f = Flat::zero();
        f.add_term(vec![0; nvars], Rational::one());
        f
    }
}
