use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;
use symroots::numeric::{magnitude, ParamValues};
use symroots::numverify::{match_roots, numeric_roots, verify_solutions, NumPoly, VerifyOptions};
use symroots::parse::parse_poly;
use symroots::poly::{BiPoly, ParamPoly, Rational};
use symroots::radical::{eval_radical, solve_univariate_radicals};
use symroots::reduce::{
    find_split_constants, reduce_iterate, reduce_shifted_iterate, solve_reduction, solve_symmetric_system,
    split_lambda_mu, split_mixed, split_nonclassical,
};
use symroots::solution::SolutionSet;

const BITS: u32 = 200;

fn p(s: &str) -> BiPoly {
    parse_poly(s, ["x", "y"]).unwrap()
}

fn at(pairs: &[(&str, f64)]) -> ParamValues {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Complex::with_val(BITS, (*v, 0))))
        .collect()
}

fn preserved(eqs: &[BiPoly], set: &SolutionSet) {
    let v = verify_solutions(eqs, set, &VerifyOptions::default()).unwrap();
    let parametric = eqs.iter().any(|e| !e.params().is_empty());
    assert_eq!(v.samples, if parametric { 20 } else { 1 });
    assert!(v.passed, "{v}");
}

/// `y = f(x)` and `x = f(y)`.
fn iterate_system(f: &BiPoly) -> [BiPoly; 2] {
    let fy = f.swap();
    [&f.var_y() - f, &f.var_x() - &fy]
}

#[test]
fn symmetric_power_sums_preserved() {
    let (a, b) = (p("x^3+y^3-a"), p("x^2+y^2-b"));
    preserved(&[a.clone(), b.clone()], &solve_symmetric_system(&a, &b).unwrap());
}

#[test]
fn mixed_example_preserved() {
    let (a, b) = (p("x^2+y^2-a"), p("x^3-y^3+b*y-b*x"));
    let set = solve_reduction(&split_mixed(&a, &b).unwrap(), ["x", "y"]).unwrap();
    preserved(&[a, b], &set);
}

#[test]
fn nonclassical_example_preserved() {
    let a = p("a*x^2-x+b*y^2+c");
    let set = solve_reduction(&split_nonclassical(&a, &a.zero_like()).unwrap(), ["x", "y"]).unwrap();
    preserved(&[a.clone(), a.swap()], &set);
}

#[test]
fn iterates_preserved() {
    for f in ["x^2+a", "x^3+a", "a*x^2+x+1", "x^3-3*x+a"] {
        let f = p(f);
        let set = solve_reduction(&reduce_iterate(&f).unwrap(), ["x", "y"]).unwrap();
        preserved(&iterate_system(&f), &set);
    }
}

#[test]
fn shifted_iterate_preserved() {
    let f = p("x^2+c");
    let (a, b) = (ParamPoly::param("a"), ParamPoly::param("b"));
    let set = solve_reduction(&reduce_shifted_iterate(&f, &a, &b).unwrap(), ["x", "y"]).unwrap();
    let g = &(&f.scale_param(&a) + &f.var_x()) + &f.constant_like(&a * &b);
    preserved(&iterate_system(&g), &set);
}

#[test]
fn lambda_mu_example_preserved() {
    let (a, b) = (p("a*x^2+b*y^2+x+c"), p("(a+b)*x^2-y+c"));
    let c = find_split_constants(&a, &b, None).remove(0);
    let set = solve_reduction(&split_lambda_mu(&a, &b, &c).unwrap(), ["x", "y"]).unwrap();
    preserved(&[a, b], &set);
}

#[test]
fn cubic_iterate_has_no_real_pairs_off_the_diagonal() {
    let set = solve_reduction(&reduce_iterate(&p("x^3+a")).unwrap(), ["x", "y"]).unwrap();
    let symmetric: Vec<_> = set
        .entries
        .iter()
        .filter(|e| e.provenance.starts_with("symmetric"))
        .collect();
    assert_eq!(symmetric.iter().map(|e| e.multiplicity).sum::<u32>(), 6);
    for k in -20..=20 {
        let a = k as f64 / 2.0 + 0.123;
        let pt = at(&[("a", a)]);
        for e in &symmetric {
            let coords = e.solution.coords();
            let x = eval_radical(coords[0], &pt, 30).unwrap();
            let y = eval_radical(coords[1], &pt, 30).unwrap();
            let real = |z: &Complex| z.imag().to_f64().abs() <= 1e-12 * (1.0 + magnitude(z));
            assert!(!(real(&x) && real(&y)), "real pair at a = {a}");
        }
    }
}

#[test]
fn radical_roots_match_numeric_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let mut coeffs: Vec<ParamPoly> = (0..n)
            .map(|_| {
                let num: i64 = rng.gen_range(-50..=50);
                ParamPoly::constant(Rational::new(num.into(), 10.into()))
            })
            .collect();
        coeffs.push(ParamPoly::one());
        let poly = BiPoly::from_univariate(["x", "y"], &coeffs);
        let set = solve_univariate_radicals(&poly).unwrap();
        let none = ParamValues::new();
        let mut exact = Vec::new();
        for r in &set.roots {
            let z = eval_radical(&r.expr, &none, 30).unwrap();
            exact.extend(std::iter::repeat(z).take(r.multiplicity as usize));
        }
        let cs: Vec<Complex> = coeffs.iter().map(|c| c.eval_complex(&none, BITS).unwrap()).collect();
        let numeric = numeric_roots(&NumPoly::new(cs), 30).unwrap();
        let m = match_roots(&exact, &numeric, 1e-8);
        assert!(m.success, "{poly}: distance {}", m.max_distance);
    }
}

#[test]
fn resultant_oracle_ignores_intersections_at_infinity() {
    let (a, b) = (p("x^3*y+x*y^3+2"), p("x^2*y-x*y^2"));
    let set = solve_reduction(&split_mixed(&a, &b).unwrap(), ["x", "y"]).unwrap();
    assert_eq!(set.count(), 4);
    preserved(&[a, b], &set);
}
