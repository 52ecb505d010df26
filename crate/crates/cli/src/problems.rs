//! Built-in benchmark equations with reference root counts from two
//! computer algebra systems.

use serde_json::{json, Value};

use crate::pipeline::{solve, SolveOptions};
use crate::report::SolveReport;

pub struct Problem {
    pub id: u8,
    pub equation: &'static str,
}

pub const PROBLEMS: [Problem; 3] = [
    Problem { id: 1, equation: "(a-x^2)^3=(b-x^3)^2" },
    Problem { id: 2, equation: "(x^3+a)^3+a=x" },
    Problem { id: 3, equation: "(x^3+x+b)^3+x^3+2*b=0" },
];

/// One parameter setting and the closed-form root counts reported by
/// Maple and Mathematica for it.
pub struct Case {
    pub problem: u8,
    pub params: &'static [(&'static str, &'static str)],
    pub maple: u32,
    pub mathematica: u32,
}

pub const CASES: &[Case] = &[
    Case { problem: 1, params: &[], maple: 0, mathematica: 0 },
    Case { problem: 1, params: &[("a", "0")], maple: 6, mathematica: 6 },
    Case { problem: 1, params: &[("b", "0")], maple: 6, mathematica: 6 },
    Case { problem: 1, params: &[("a", "2")], maple: 0, mathematica: 0 },
    Case { problem: 1, params: &[("b", "2")], maple: 0, mathematica: 0 },
    Case { problem: 1, params: &[("a", "5"), ("b", "2")], maple: 6, mathematica: 2 },
    Case { problem: 1, params: &[("a", "7"), ("b", "2")], maple: 0, mathematica: 0 },
    Case { problem: 1, params: &[("a", "7.0"), ("b", "2.0")], maple: 6, mathematica: 6 },
    Case { problem: 2, params: &[], maple: 3, mathematica: 3 },
    Case { problem: 2, params: &[("a", "3")], maple: 9, mathematica: 5 },
    Case { problem: 2, params: &[("a", "3.0")], maple: 9, mathematica: 9 },
    Case { problem: 3, params: &[], maple: 3, mathematica: 3 },
    Case { problem: 3, params: &[("b", "4")], maple: 9, mathematica: 5 },
    Case { problem: 3, params: &[("b", "4.0")], maple: 9, mathematica: 9 },
];

impl Case {
    pub fn equation(&self) -> &'static str {
        PROBLEMS[(self.problem - 1) as usize].equation
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            "symbolic".into()
        } else {
            self.params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", ")
        }
    }

    pub fn options(&self, base: &SolveOptions) -> SolveOptions {
        let mut o = base.clone();
        o.params = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        o
    }
}

pub struct Row {
    pub case: &'static Case,
    pub outcome: Result<SolveReport, String>,
}

impl Row {
    pub fn count(&self) -> Option<u32> {
        self.outcome.as_ref().ok().map(SolveReport::root_count)
    }

    pub fn kind(&self) -> &'static str {
        match &self.outcome {
            Ok(r) if r.is_exact() => "radicals",
            Ok(_) => "numeric",
            Err(_) => "error",
        }
    }

    pub fn verified(&self) -> Option<bool> {
        self.outcome.as_ref().ok().and_then(SolveReport::verified)
    }
}

/// Solves every case of the selected problems (all when `which` is empty).
pub fn run(which: &[u8], base: &SolveOptions) -> Vec<Row> {
    CASES
        .iter()
        .filter(|c| which.is_empty() || which.contains(&c.problem))
        .map(|case| Row {
            case,
            outcome: solve(case.equation(), &case.options(base)).map_err(|e| e.to_string()),
        })
        .collect()
}

pub fn table(rows: &[Row]) -> String {
    let mut out = format!(
        "{:<3} {:<24} {:<14} {:>6} {:>9} {:>6} {:>6}  {}\n",
        "#", "equation", "values", "roots", "kind", "Maple", "Mma", "verified"
    );
    for r in rows {
        let verified = match r.verified() {
            Some(true) => "yes".to_string(),
            Some(false) => "NO".to_string(),
            None => match &r.outcome {
                Err(e) => e.clone(),
                Ok(_) => "skipped".to_string(),
            },
        };
        out.push_str(&format!(
            "{:<3} {:<24} {:<14} {:>6} {:>9} {:>6} {:>6}  {}\n",
            r.case.problem,
            r.case.equation(),
            r.case.label(),
            r.count().map_or("-".into(), |c| c.to_string()),
            r.kind(),
            r.case.maple,
            r.case.mathematica,
            verified
        ));
    }
    out
}

pub fn to_json(rows: &[Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                let params: serde_json::Map<String, Value> = r
                    .case
                    .params
                    .iter()
                    .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
                    .collect();
                json!({
                    "problem": r.case.problem,
                    "equation": r.case.equation(),
                    "params": params,
                    "roots": r.count(),
                    "kind": r.kind(),
                    "maple": r.case.maple,
                    "mathematica": r.case.mathematica,
                    "verified": r.verified(),
                    "error": r.outcome.as_ref().err(),
                })
            })
            .collect(),
    )
}
