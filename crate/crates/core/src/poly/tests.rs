use std::collections::BTreeMap;

use proptest::prelude::*;
use rug::Complex;

use super::*;
use crate::error::Error;
use crate::numeric::ParamValues;
use crate::parse::parse_poly;

fn p(s: &str) -> BiPoly {
    parse_poly(s, ["x", "y"]).unwrap()
}

fn point(x: f64, y: f64) -> BTreeMap<String, Complex> {
    [("x".to_string(), Complex::with_val(200, x)), ("y".to_string(), Complex::with_val(200, y))]
        .into_iter()
        .collect()
}

fn params(pairs: &[(&str, f64)]) -> ParamValues {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Complex::with_val(200, *v)))
        .collect()
}

#[test]
fn binomial_square() {
    let s = arith(ArithOp::Pow, &p("x+y"), Operand::Exponent(2)).unwrap();
    assert_eq!(s, p("x^2+2*x*y+y^2"));
}

#[test]
fn sextic_difference_expands() {
    let l = p("(a-x^2)^3");
    let r = p("(b-x^3)^2");
    let d = arith(ArithOp::Sub, &l, Operand::Poly(&r)).unwrap();
    assert_eq!(d, p("-2*x^6+3*a*x^4+2*b*x^3-3*a^2*x^2+a^3-b^2"));
}

#[test]
fn additive_identity() {
    let q = p("a*x^3-y+2");
    assert_eq!(arith(ArithOp::Add, &q, Operand::Poly(&BiPoly::zero())).unwrap(), q);
}

#[test]
fn mismatched_unknowns() {
    let q = parse_poly("t+1", ["t", "y"]).unwrap();
    assert!(matches!(p("x").checked_add(&q), Err(Error::SymbolMismatch(_))));
}

#[test]
fn swap_substitution() {
    let b: BTreeMap<String, BiPoly> =
        [("x".into(), p("y")), ("y".into(), p("x"))].into_iter().collect();
    assert_eq!(p("x^2+y^2").substitute(&b).unwrap(), p("x^2+y^2"));
    assert_eq!(p("x-2*y").substitute(&b).unwrap(), p("y-2*x"));
}

#[test]
fn back_substitution() {
    let s = parse_poly("x^2-s*x+t", ["x", "y"]).unwrap();
    assert_eq!(s.substitute(&BTreeMap::new()).unwrap(), s);
    let b: BTreeMap<String, BiPoly> = [("y".into(), p("s-x"))].into_iter().collect();
    assert_eq!(p("x*y").substitute(&b).unwrap(), p("s*x-x^2"));
}

#[test]
fn composition_substitution() {
    let b: BTreeMap<String, BiPoly> = [("x".into(), p("x^3+a"))].into_iter().collect();
    assert_eq!(p("x^3+a").substitute(&b).unwrap(), p("(x^3+a)^3+a"));
}

#[test]
fn substitute_unknown_name() {
    let b: BTreeMap<String, BiPoly> = [("z".into(), p("x"))].into_iter().collect();
    assert!(matches!(p("x").substitute(&b), Err(Error::SymbolMismatch(_))));
}

#[test]
fn evaluate_simple() {
    let v = p("x^3+a").evaluate_numeric(&point(2.0, 0.0), &params(&[("a", 3.0)]), 20).unwrap();
    assert_eq!(v, Complex::with_val(64, 11));
}

#[test]
fn evaluate_near_roots() {
    let e7 = p("2*x^6-3*a*x^4-2*b*x^3+3*a^2*x^2+b^2-a^3");
    let v = e7
        .evaluate_numeric(&point(1.963798039, 0.0), &params(&[("a", 7.0), ("b", 2.0)]), 15)
        .unwrap();
    assert!(crate::numeric::magnitude(&v) < 1e-6);
    let c = p("x^3-x+3");
    let v = c.evaluate_numeric(&point(-1.67169988165728, 0.0), &ParamValues::new(), 15).unwrap();
    assert!(crate::numeric::magnitude(&v) < 1e-9);
}

#[test]
fn evaluate_unbound() {
    assert!(matches!(
        p("x+a").evaluate_numeric(&point(1.0, 0.0), &ParamValues::new(), 15),
        Err(Error::UnboundSymbol(_))
    ));
    assert!(matches!(
        p("x+y").evaluate_numeric(&BTreeMap::new(), &ParamValues::new(), 15),
        Err(Error::UnboundSymbol(_))
    ));
}

#[test]
fn divide_examples() {
    assert_eq!(divide_exact(&p("x^3-y^3+b*(y-x)"), &p("x-y")).unwrap(), p("x^2+x*y+y^2-b"));
    assert_eq!(divide_exact(&p("x^2-y^2"), &p("x-y")).unwrap(), p("x+y"));
    assert!(matches!(divide_exact(&p("x^2+y"), &p("x-y")), Err(Error::NotDivisible(_))));
}

#[test]
fn divide_with_parameter_lead() {
    let d = p("(a-b)*x+1");
    let q = p("x*y+a");
    assert_eq!(divide_exact(&(&d * &q), &d).unwrap(), q);
    assert!(divide_exact(&p("x"), &p("a*x+1")).is_err());
}

#[test]
fn resultant_of_diagonal() {
    assert_eq!(resultant_eliminate(&p("y-x"), &p("x^2+y^2-a"), "y").unwrap(), p("2*x^2-a"));
}

#[test]
fn resultant_degree_error() {
    assert!(matches!(
        resultant_eliminate(&p("x-1"), &p("y^2-a"), "y"),
        Err(Error::DegreeError(_))
    ));
}

#[test]
fn resultant_symmetric_system_is_sextic() {
    let r = resultant_eliminate(&p("x^2+y^2-a"), &p("x^3+y^3-b"), "y").unwrap();
    assert_eq!(r.degree_y(), 0);
    let e7 = p("2*x^6-3*a*x^4-2*b*x^3+3*a^2*x^2+b^2-a^3");
    assert_eq!(r.primitive(), e7.primitive());
}

#[test]
fn primitive_normalises() {
    assert_eq!(p("-4*x^2+6*a").primitive(), p("2*x^2-3*a"));
    assert_eq!(p("(1/2)*x+(1/3)").primitive(), p("3*x+2"));
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    let term = (0u32..3, 0u32..3, -4i64..5, 0u32..2, 0u32..2);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let mut out = BiPoly::zero();
        for (i, j, c, ea, eb) in ts {
            let coeff = ParamPoly::from_terms([(
                param::PMono::from_pairs(
                    [("a".to_string(), ea), ("b".to_string(), eb)]
                        .into_iter()
                        .filter(|(_, e)| *e > 0),
                ),
                integer(c),
            )]);
            out = &out + &BiPoly::x().pow(i).checked_mul(&BiPoly::y().pow(j)).unwrap().scale_param(&coeff);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn divide_round_trip(a in small_poly(), d in small_poly()) {
        prop_assume!(!d.is_zero());
        let prod = &a * &d;
        let q = divide_exact(&prod, &d).unwrap();
        prop_assert_eq!(&q * &d, prod.clone());
        if let Ok(q2) = divide_exact(&(&prod + &BiPoly::x()), &d) {
            prop_assert_eq!(&q2 * &d, &prod + &BiPoly::x());
        }
    }

    #[test]
    fn canonical_idempotence(a in small_poly()) {
        let once = BiPoly::from_terms(["x", "y"], a.terms().map(|(m, c)| (*m, c.clone())));
        let twice = BiPoly::from_terms(["x", "y"], once.terms().map(|(m, c)| (*m, c.clone())));
        prop_assert_eq!(&once, &a);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn evaluation_is_multiplicative(
        a in small_poly(), b in small_poly(),
        xv in -2.0f64..2.0, yv in -2.0f64..2.0, av in -2.0f64..2.0, bv in -2.0f64..2.0,
    ) {
        let pt = point(xv, yv);
        let pv = params(&[("a", av), ("b", bv)]);
        let prec = 20;
        let lhs = (&a * &b).evaluate_numeric(&pt, &pv, prec).unwrap();
        let rhs = a.evaluate_numeric(&pt, &pv, prec).unwrap() * b.evaluate_numeric(&pt, &pv, prec).unwrap();
        let scale = 1.0 + a.residual_scale(&pt, &pv, prec).unwrap() * b.residual_scale(&pt, &pv, prec).unwrap();
        let diff = crate::numeric::magnitude(&Complex::with_val(200, &lhs - &rhs));
        prop_assert!(diff < 10f64.powi(3 - prec as i32) * scale);
    }
}
