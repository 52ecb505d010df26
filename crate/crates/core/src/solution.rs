//! Collections of exact roots with multiplicities, provenance and the
//! parameter conditions they rely on.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Complex;
use serde_json::{json, Value};

use crate::numeric::{magnitude, ParamValues};
use crate::parse::Render;
use crate::poly::{BiPoly, ParamPoly, Rational};
use crate::radical::{Evaluator, RadicalExpr};

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Single(RadicalExpr),
    Pair { x: RadicalExpr, y: RadicalExpr },
}

impl Solution {
    /// The first coordinate.
    pub fn x(&self) -> &RadicalExpr {
        match self {
            Solution::Single(x) => x,
            Solution::Pair { x, .. } => x,
        }
    }

    pub fn coords(&self) -> Vec<&RadicalExpr> {
        match self {
            Solution::Single(x) => vec![x],
            Solution::Pair { x, y } => vec![x, y],
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solution::Single(x) => write!(f, "{x}"),
            Solution::Pair { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionEntry {
    pub solution: Solution,
    pub multiplicity: u32,
    /// Which reduction branch produced the entry.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub unknowns: Vec<String>,
    pub entries: Vec<SolutionEntry>,
    /// Parameter expressions assumed nonzero.
    pub assumptions: Vec<ParamPoly>,
    /// Free-form markers such as degenerate branches.
    pub flags: Vec<String>,
    /// A univariate polynomial in the first unknown whose roots are the
    /// first coordinates of the solutions, when known.
    pub eliminated: Option<BiPoly>,
}

impl SolutionSet {
    pub fn new(unknowns: &[&str]) -> Self {
        SolutionSet {
            unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
            entries: Vec::new(),
            assumptions: Vec::new(),
            flags: Vec::new(),
            eliminated: None,
        }
    }

    pub fn count(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, solution: Solution, multiplicity: u32, provenance: &str) {
        self.entries.push(SolutionEntry {
            solution,
            multiplicity,
            provenance: provenance.to_string(),
        });
    }

    pub fn assume(&mut self, p: &ParamPoly) {
        if !p.is_constant() && !self.assumptions.contains(p) {
            self.assumptions.push(p.clone());
        }
    }

    pub fn flag(&mut self, text: impl Into<String>) {
        let t = text.into();
        if !self.flags.contains(&t) {
            self.flags.push(t);
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.flags.iter().any(|f| f.starts_with("degenerate"))
    }

    /// Appends another set, merging assumptions and flags.
    pub fn absorb(&mut self, other: SolutionSet) {
        self.entries.extend(other.entries);
        for a in &other.assumptions {
            self.assume(a);
        }
        for f in other.flags {
            self.flag(f);
        }
    }

    /// Parameters appearing in any root.
    pub fn params(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        for e in &self.entries {
            for c in e.solution.coords() {
                out.extend(c.params());
            }
        }
        for a in &self.assumptions {
            out.extend(a.params());
        }
        out
    }

    /// Numeric values of every entry at one parameter point.
    pub fn evaluate(&self, params: &ParamValues, precision: u32) -> crate::Result<Vec<Vec<Complex>>> {
        let mut ev = Evaluator::new(params, precision);
        self.entries
            .iter()
            .map(|e| e.solution.coords().into_iter().map(|c| ev.eval(c)).collect())
            .collect()
    }

    /// Merges entries that agree numerically at five random parameter
    /// points to `1e-20` at 40 digits, summing their multiplicities.
    pub fn dedup(&mut self) {
        if self.entries.len() < 2 {
            return;
        }
        let names: Vec<String> = self.params().into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(crate::numverify::DEFAULT_SEED);
        let mut samples: Vec<Vec<Vec<Complex>>> = Vec::new();
        let mut attempts = 0;
        while samples.len() < 5 && attempts < 200 {
            attempts += 1;
            let Some(point) = crate::numverify::sample_params(&mut rng, &names, &self.assumptions) else {
                continue;
            };
            if let Ok(v) = self.evaluate(&to_complex(&point), 40) {
                samples.push(v);
            }
            if names.is_empty() {
                break;
            }
        }
        if samples.is_empty() {
            return;
        }
        let same = |i: usize, j: usize| {
            samples.iter().all(|s| {
                s[i].iter().zip(&s[j]).all(|(a, b)| {
                    let d = Complex::with_val(a.prec().0, a - b);
                    magnitude(&d) < 1e-20 * (1.0 + magnitude(a))
                })
            })
        };
        let mut keep: Vec<usize> = Vec::new();
        let mut merged: Vec<SolutionEntry> = Vec::new();
        for i in 0..self.entries.len() {
            match keep.iter().position(|&k| same(k, i)) {
                Some(pos) => merged[pos].multiplicity += self.entries[i].multiplicity,
                None => {
                    keep.push(i);
                    merged.push(self.entries[i].clone());
                }
            }
        }
        self.entries = merged;
    }
}

pub fn to_complex(point: &BTreeMap<String, Rational>) -> ParamValues {
    point
        .iter()
        .map(|(k, v)| (k.clone(), crate::numeric::complex_from_rational(v, 256)))
        .collect()
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = if self.unknowns.len() == 1 {
            self.unknowns[0].clone()
        } else {
            format!("({})", self.unknowns.join(", "))
        };
        for e in &self.entries {
            write!(f, "{lhs} = {}", e.solution)?;
            if e.multiplicity > 1 {
                write!(f, "  [multiplicity {}]", e.multiplicity)?;
            }
            writeln!(f)?;
        }
        if !self.assumptions.is_empty() {
            let a: Vec<String> = self.assumptions.iter().map(|a| format!("{a} != 0")).collect();
            writeln!(f, "assuming {}", a.join(", "))?;
        }
        for fl in &self.flags {
            writeln!(f, "note: {fl}")?;
        }
        Ok(())
    }
}

impl Render for SolutionSet {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_machine(&self) -> Value {
        let roots: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "expr": e.solution.to_string(),
                    "multiplicity": e.multiplicity,
                    "provenance": e.provenance,
                })
            })
            .collect();
        json!({
            "unknowns": self.unknowns,
            "assumptions": self.assumptions.iter().map(|a| format!("{a} != 0")).collect::<Vec<_>>(),
            "flags": self.flags,
            "roots": roots,
        })
    }
}
