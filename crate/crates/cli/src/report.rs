//! Solve reports: text and machine-readable output, and re-checking a saved report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use rug::Complex;
use serde_json::{json, Value};
use symroots::error::{Error, Result};
use symroots::numeric::format_float;
use symroots::numverify::{verify_solutions, VerifyOptions, VerifyReport};
use symroots::parse::{parse, parse_poly, to_bipoly};
use symroots::poly::BiPoly;
use symroots::radical::{parse_radical_tuple, Evaluator};
use symroots::solution::{Solution, SolutionSet};

use crate::pipeline::Structure;

/// A complex value printed to the requested number of digits.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericValue {
    pub re: String,
    pub im: String,
}

impl NumericValue {
    /// Parts below `10^-digits` of the modulus print as zero.
    pub fn from_complex(z: &Complex, digits: u32) -> Self {
        let floor = z.clone().abs().real().to_f64() * 10f64.powi(-(digits as i32));
        let part = |x: &rug::Float| {
            if x.to_f64().abs() <= floor {
                "0".to_string()
            } else {
                format_float(x, digits)
            }
        };
        NumericValue {
            re: part(z.real()),
            im: part(z.imag()),
        }
    }

    pub fn re_f64(&self) -> f64 {
        self.re.parse().unwrap_or(f64::NAN)
    }

    pub fn im_f64(&self) -> f64 {
        self.im.parse().unwrap_or(f64::NAN)
    }

    pub fn is_real(&self) -> bool {
        self.im_f64() == 0.0
    }
}

/// `re`, `im*i`, `re+im*i` or `re-im*i`.
pub fn complex_text(v: &NumericValue) -> String {
    if v.is_real() {
        return v.re.clone();
    }
    if v.re == "0" {
        return format!("{}*i", v.im);
    }
    match v.im.strip_prefix('-') {
        Some(im) => format!("{}-{}*i", v.re, im),
        None => format!("{}+{}*i", v.re, v.im),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub expr: String,
    pub multiplicity: u32,
    /// Value of the first coordinate, when no parameters remain.
    pub numeric: Option<NumericValue>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifySummary {
    pub samples: usize,
    pub max_residual: f64,
    pub passed: bool,
    pub details: Vec<String>,
}

impl VerifySummary {
    pub fn from_report(r: &VerifyReport) -> Self {
        VerifySummary {
            samples: r.samples,
            max_residual: r.max_residual,
            passed: r.passed,
            details: {
                let mut d: Vec<String> = r.failures.iter().take(10).map(|f| f.to_string()).collect();
                if r.failures.len() > 10 {
                    d.push(format!("... and {} more", r.failures.len() - 10));
                }
                d
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub input: String,
    pub params: Vec<(String, String)>,
    pub precision: u32,
    pub structure: Structure,
    pub detail: String,
    pub assumptions: Vec<String>,
    pub flags: Vec<String>,
    pub roots: Vec<RootReport>,
    pub verification: Option<VerifySummary>,
    pub elapsed: Duration,
    /// Exact solutions, absent for the numeric fallback.
    pub solutions: Option<SolutionSet>,
    /// The equations after exact bindings, as `lhs - rhs`.
    pub equations: Vec<BiPoly>,
}

impl SolveReport {
    pub(crate) fn new(input: &str, params: &[(String, String)], precision: u32) -> Self {
        SolveReport {
            input: input.to_string(),
            params: params.to_vec(),
            precision,
            structure: Structure::Numeric,
            detail: String::new(),
            assumptions: Vec::new(),
            flags: Vec::new(),
            roots: Vec::new(),
            verification: None,
            elapsed: Duration::ZERO,
            solutions: None,
            equations: Vec::new(),
        }
    }

    pub(crate) fn fill(&mut self, structure: Structure, detail: String, set: &SolutionSet, precision: u32) {
        self.structure = structure;
        self.detail = detail;
        self.assumptions = set.assumptions.iter().map(|a| a.to_string()).collect();
        self.flags.extend(set.flags.iter().cloned());
        let empty = BTreeMap::new();
        let closed = set.params().is_empty();
        let mut ev = Evaluator::new(&empty, precision);
        for e in &set.entries {
            let numeric = if closed {
                ev.eval(e.solution.x())
                    .ok()
                    .map(|z| NumericValue::from_complex(&z, precision))
            } else {
                None
            };
            self.roots.push(RootReport {
                expr: e.solution.to_string(),
                multiplicity: e.multiplicity,
                numeric,
                provenance: e.provenance.clone(),
            });
        }
    }

    /// Roots counted with multiplicity.
    pub fn root_count(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.structure.is_exact()
    }

    /// Numeric first coordinates, repeated by multiplicity.
    pub fn values(&self) -> Vec<(f64, f64)> {
        self.roots
            .iter()
            .filter_map(|r| r.numeric.as_ref().map(|v| (r.multiplicity, (v.re_f64(), v.im_f64()))))
            .flat_map(|(m, v)| std::iter::repeat(v).take(m as usize))
            .collect()
    }

    pub fn verified(&self) -> Option<bool> {
        self.verification.as_ref().map(|v| v.passed)
    }

    /// Deterministic JSON; timing is left out.
    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let roots: Vec<Value> = self
            .roots
            .iter()
            .map(|r| {
                json!({
                    "expr": r.expr,
                    "multiplicity": r.multiplicity,
                    "numeric": r.numeric.as_ref().map(|v| json!({"re": v.re, "im": v.im})),
                })
            })
            .collect();
        json!({
            "input": self.input,
            "params": params,
            "structure": self.structure.label(),
            "detail": self.detail,
            "assumptions": self.assumptions,
            "flags": self.flags,
            "roots": roots,
            "verification": self.verification.as_ref().map(|v| json!({
                "samples": v.samples,
                "max_residual": v.max_residual,
                "passed": v.passed,
            })),
            "versions": {
                "symroots": symroots::VERSION,
                "symroots-cli": env!("CARGO_PKG_VERSION"),
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let unknown = self
            .solutions
            .as_ref()
            .map(|set| set.unknowns.join(", "))
            .unwrap_or_else(|| "x".into());
        let _ = writeln!(s, "input:     {}", self.input);
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(s, "params:    {}", p.join(", "));
        }
        let _ = writeln!(s, "structure: {} ({})", self.structure.label(), self.detail);
        let _ = writeln!(s, "roots:     {} counted with multiplicity", self.root_count());
        let lhs = if unknown.contains(',') { format!("({unknown})") } else { unknown };
        for r in &self.roots {
            let _ = write!(s, "  {lhs} = {}", r.expr);
            if r.multiplicity > 1 {
                let _ = write!(s, "   [multiplicity {}]", r.multiplicity);
            }
            if let Some(v) = &r.numeric {
                if self.is_exact() {
                    let _ = write!(s, "   ~ {}", complex_text(v));
                }
            }
            let _ = writeln!(s);
        }
        for a in &self.assumptions {
            let _ = writeln!(s, "assuming:  {a} != 0");
        }
        for f in &self.flags {
            let _ = writeln!(s, "note:      {f}");
        }
        match &self.verification {
            Some(v) => {
                let _ = writeln!(
                    s,
                    "verify:    {} ({} sample{}, max relative residual {:.3e})",
                    if v.passed { "passed" } else { "FAILED" },
                    v.samples,
                    if v.samples == 1 { "" } else { "s" },
                    v.max_residual
                );
                for d in &v.details {
                    let _ = writeln!(s, "  {d}");
                }
            }
            None => {
                let _ = writeln!(s, "verify:    skipped");
            }
        }
        let _ = writeln!(s, "time:      {:.1} ms", self.elapsed.as_secs_f64() * 1e3);
        s
    }
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key)
        .ok_or_else(|| Error::DomainError(format!("report has no `{key}` field")))
}

fn strings(v: &Value, key: &str) -> Result<Vec<String>> {
    let Some(items) = v.as_array() else {
        return Err(Error::DomainError(format!("`{key}` must be a list")));
    };
    items
        .iter()
        .map(|i| {
            i.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::DomainError(format!("`{key}` must hold strings")))
        })
        .collect()
}

/// Re-checks a machine report: the roots are read back from their text
/// and verified against the input with the report's parameter bindings.
pub fn verify_saved(doc: &Value, opts: &VerifyOptions) -> Result<VerifyReport> {
    let input = field(doc, "input")?
        .as_str()
        .ok_or_else(|| Error::DomainError("`input` must be a string".into()))?;
    if field(doc, "structure")?.as_str() == Some(Structure::Numeric.label()) {
        return Err(Error::DomainError(
            "numeric reports hold no closed forms to re-check".into(),
        ));
    }
    let stmt = parse(input, None)?;
    let slots = stmt.unknown_slots();
    let names = [slots[0].as_str(), slots[1].as_str()];
    let mut bindings = BTreeMap::new();
    if let Some(map) = doc.get("params").and_then(Value::as_object) {
        for (k, v) in map {
            let text = v
                .as_str()
                .ok_or_else(|| Error::DomainError(format!("parameter `{k}` must be a string")))?;
            let value = parse_poly(text, names)?;
            if !value.is_constant() {
                return Err(Error::DomainError(format!("parameter `{k}` is not a number")));
            }
            bindings.insert(k.clone(), value.coeff(0, 0));
        }
    }
    let eqs: Vec<BiPoly> = to_bipoly(&stmt)?
        .into_iter()
        .map(|e| e.substitute_params(&bindings))
        .collect();
    let unknowns: Vec<&str> = stmt.unknowns.iter().map(String::as_str).collect();
    let mut set = SolutionSet::new(&unknowns);
    let roots = field(doc, "roots")?
        .as_array()
        .ok_or_else(|| Error::DomainError("`roots` must be a list".into()))?;
    for r in roots {
        let expr = r
            .get("expr")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::DomainError("root without `expr`".into()))?;
        let m = r.get("multiplicity").and_then(Value::as_u64).unwrap_or(1) as u32;
        let mut coords = parse_radical_tuple(expr)?;
        let solution = match (unknowns.len(), coords.len()) {
            (1, 1) => Solution::Single(coords.remove(0)),
            (2, 2) => {
                let y = coords.remove(1);
                Solution::Pair { x: coords.remove(0), y }
            }
            _ => {
                return Err(Error::DomainError(format!(
                    "root `{expr}` does not match {} unknown(s)",
                    unknowns.len()
                )))
            }
        };
        set.push(solution, m, "report");
    }
    for a in strings(field(doc, "assumptions")?, "assumptions")? {
        let p = parse_poly(&a, names)?;
        set.assume(&p.coeff(0, 0));
    }
    if let Some(flags) = doc.get("flags") {
        for f in strings(flags, "flags")? {
            set.flag(f);
        }
    }
    verify_solutions(&eqs, &set, opts)
}
