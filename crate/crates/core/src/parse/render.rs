use serde_json::{json, Value};

use crate::poly::BiPoly;

/// Output flavour for [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Values that can be printed as text or as a JSON document.
pub trait Render {
    fn to_text(&self) -> String;
    fn to_machine(&self) -> Value;
}

pub fn render<T: Render + ?Sized>(value: &T, format: Format) -> String {
    match format {
        Format::Text => value.to_text(),
        Format::Machine => {
            serde_json::to_string_pretty(&value.to_machine()).expect("json serialization")
        }
    }
}

impl Render for BiPoly {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_machine(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(m, c)| json!({"exponents": [m.x, m.y], "coeff": c.to_string()}))
            .collect();
        json!({"unknowns": self.names(), "expr": self.to_string(), "terms": terms})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn canonical_text() {
        let p = parse_poly("y^2+2*x*y+x^2", ["x", "y"]).unwrap();
        assert_eq!(render(&p, Format::Text), "x^2+2*x*y+y^2");
    }

    #[test]
    fn text_round_trip_with_parameters() {
        for src in ["(a+b)*x^2-x+2*c", "-(1/2)*a*x*y+b^2-3", "0", "x-y", "(a-1/3)^2*y^3"] {
            let p = parse_poly(src, ["x", "y"]).unwrap();
            let back = parse_poly(&render(&p, Format::Text), ["x", "y"]).unwrap();
            assert_eq!(back, p, "{src}");
        }
    }

    #[test]
    fn machine_has_terms() {
        let p = parse_poly("x^2+a", ["x", "y"]).unwrap();
        let v: Value = serde_json::from_str(&render(&p, Format::Machine)).unwrap();
        assert_eq!(v["terms"].as_array().unwrap().len(), 2);
        assert_eq!(v["expr"], "x^2+a");
    }
}
