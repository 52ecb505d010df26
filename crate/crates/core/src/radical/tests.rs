use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;

use super::*;
use crate::numeric::{magnitude, ParamValues};
use crate::parse::parse_poly;
use crate::poly::{BiPoly, ParamPoly};

fn p(s: &str) -> BiPoly {
    parse_poly(s, ["x", "y"]).unwrap()
}

fn vals(pairs: &[(&str, f64)]) -> ParamValues {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Complex::with_val(200, *v)))
        .collect()
}

fn numeric(set: &RootSet, params: &ParamValues) -> Vec<Complex> {
    let mut ev = Evaluator::new(params, 30);
    let mut out = Vec::new();
    for r in &set.roots {
        let v = ev.eval(&r.expr).unwrap();
        for _ in 0..r.multiplicity {
            out.push(v.clone());
        }
    }
    out
}

fn residual_ok(poly: &BiPoly, set: &RootSet, params: &ParamValues) {
    let coeffs = poly.univariate_coeffs().unwrap();
    let cs: Vec<Complex> = coeffs.iter().map(|c| c.eval_complex(params, 200).unwrap()).collect();
    let maxc = cs.iter().map(magnitude).fold(0.0, f64::max);
    for z in numeric(set, params) {
        let mut acc = Complex::with_val(200, 0);
        for c in cs.iter().rev() {
            acc = acc * &z + c;
        }
        assert!(magnitude(&acc) < 1e-9 * (1.0 + maxc), "{poly}: residual {} at {z}", magnitude(&acc));
    }
}

#[test]
fn quadratic_formula() {
    let set = solve_univariate_radicals(&p("x^2-x+a")).unwrap();
    assert_eq!(set.roots.len(), 2);
    let texts: Vec<String> = set.roots.iter().map(|r| r.expr.to_string()).collect();
    assert_eq!(texts, ["1/2+(1/2)*sqrt(1-4*a)", "1/2-(1/2)*sqrt(1-4*a)"]);
    residual_ok(&p("x^2-x+a"), &set, &vals(&[("a", 3.0)]));
}

#[test]
fn cube_roots_of_unity() {
    let set = solve_univariate_radicals(&p("x^3-1")).unwrap();
    assert_eq!(
        set.exprs(),
        vec![RadicalExpr::one(), RadicalExpr::unity(3, 1), RadicalExpr::unity(3, 2)]
    );
}

#[test]
fn sigma_cubic_contains_one() {
    let poly = parse_poly("s^3-3*a*s+2*b", ["s", "y"]).unwrap();
    let set = solve_univariate_radicals(&poly).unwrap();
    let found = numeric(&set, &vals(&[("a", 1.0), ("b", 1.0)]));
    assert!(found.iter().any(|z| magnitude(&Complex::with_val(200, z - 1)) < 1e-9));
}

#[test]
fn degree_limits() {
    assert!(matches!(solve_univariate_radicals(&p("3")), Err(crate::Error::NotSolvableHere(_))));
    assert!(matches!(solve_univariate_radicals(&p("x^5+x+a")), Err(crate::Error::NotSolvableHere(_))));
    assert!(matches!(solve_univariate_radicals(&p("x*y+1")), Err(crate::Error::ArityError(_))));
}

#[test]
fn exact_multiplicities_rational() {
    let set = solve_univariate_radicals(&p("(x-1)^2*(x+3)^2")).unwrap();
    assert_eq!(set.roots.len(), 2);
    assert!(set.roots.iter().all(|r| r.multiplicity == 2));
    let set = solve_univariate_radicals(&p("x^3*(x-2)")).unwrap();
    assert_eq!(set.roots[0].multiplicity, 3);
}

#[test]
fn parametric_multiplicities() {
    let set = solve_univariate_radicals(&p("x^2-2*a*x+a^2")).unwrap();
    assert_eq!(set.roots.len(), 1);
    assert_eq!(set.roots[0].multiplicity, 2);
    assert_eq!(set.roots[0].expr.to_string(), "a");
    // (x-a)^2 (x+2a)
    let set = solve_univariate_radicals(&p("(x-a)^2*(x+2*a)")).unwrap();
    assert_eq!(set.roots.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), [2, 1]);
    assert_eq!(set.roots[0].expr.to_string(), "a");
    assert_eq!(set.roots[1].expr.to_string(), "-2*a");
    let set = solve_univariate_radicals(&p("(x-a)^3")).unwrap();
    assert_eq!(set.roots[0].multiplicity, 3);
}

#[test]
fn leading_coefficient_assumption() {
    let set = solve_univariate_radicals(&p("a*x^2+x+1")).unwrap();
    assert_eq!(set.assumptions, vec![ParamPoly::param("a")]);
    residual_ok(&p("a*x^2+x+1"), &set, &vals(&[("a", -2.5)]));
}

#[test]
fn cardano_pure_cube() {
    let set = solve_univariate_radicals(&p("x^3+b")).unwrap();
    let params = vals(&[("b", 4.0)]);
    let found = numeric(&set, &params);
    for z in &found {
        let c = Complex::with_val(200, z * z) * z + 4;
        assert!(magnitude(&c) < 1e-20);
    }
    // the first value is the principal cube root of -b
    let principal = principal_root(Complex::with_val(200, -4), 3, 200);
    assert!(magnitude(&Complex::with_val(200, &found[0] - &principal)) < 1e-20);
}

#[test]
fn cardano_singular_branch() {
    // depressed part vanishes at a = 0: x^3 + a x + 1
    let poly = p("x^3+a*x+1");
    let set = solve_univariate_radicals(&poly).unwrap();
    for a in [0.0, 1e-30, 0.5, -3.0] {
        residual_ok(&poly, &set, &vals(&[("a", a)]));
    }
}

#[test]
fn ferrari_cases() {
    for src in ["x^4+a*x+1", "x^4+a*x^2+b", "x^4-3*x^3+a*x^2+x-2", "a*x^4+x^3+b"] {
        let poly = p(src);
        let set = solve_univariate_radicals(&poly).unwrap();
        assert_eq!(set.count(), 4);
        for (a, b) in [(2.0, 3.0), (-1.5, 0.25), (0.0, 1.0), (7.0, -2.0)] {
            if a == 0.0 && src.starts_with("a*") {
                continue;
            }
            residual_ok(&poly, &set, &vals(&[("a", a), ("b", b)]));
        }
    }
}

#[test]
fn rational_quartic_with_rational_resolvent() {
    let poly = p("x^4-10*x^2+1");
    let set = solve_univariate_radicals(&poly).unwrap();
    residual_ok(&poly, &set, &ParamValues::new());
}

#[test]
fn random_rational_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let mut coeffs: Vec<ParamPoly> = (0..n)
            .map(|_| ParamPoly::from_int(rng.gen_range(-5..=5)))
            .collect();
        coeffs.push(ParamPoly::one());
        let poly = BiPoly::from_univariate(["x", "y"], &coeffs);
        let set = solve_univariate_radicals(&poly).unwrap();
        assert_eq!(set.count(), n as u32);
        residual_ok(&poly, &set, &ParamValues::new());
    }
}

#[test]
fn simplify_preserves_value() {
    let a = RadicalExpr::param("a");
    let e = RadicalExpr::raw(Node::Add(vec![
        RadicalExpr::raw(Node::Root(RadicalExpr::int(12), 2)),
        RadicalExpr::raw(Node::Mul(vec![a.clone(), RadicalExpr::raw(Node::Neg(a.clone()))])),
    ]));
    let params = vals(&[("a", 1.25)]);
    let v1 = eval_radical(&e, &params, 30).unwrap();
    let v2 = eval_radical(&simplify_radical(&e), &params, 30).unwrap();
    assert!(magnitude(&Complex::with_val(200, v1 - v2)) < 1e-25);
}

#[test]
fn render_trait() {
    use crate::parse::{render, Format};
    let e = RadicalExpr::sqrt(&RadicalExpr::int(2));
    assert_eq!(render(&e, Format::Text), "sqrt(2)");
    assert!(render(&e, Format::Machine).contains("sqrt(2)"));
}

