use std::collections::BTreeMap;

use proptest::prelude::*;
use rug::Complex;
use symroots::numeric::{magnitude, ParamValues};
use symroots::numverify::{match_roots, numeric_roots, verify_solutions, FailureKind, NumPoly, VerifyOptions};
use symroots::parse::{parse, parse_poly};
use symroots::poly::{BiPoly, Mono2, ParamPoly, Rational};
use symroots::radical::{eval_radical, solve_univariate_radicals};
use symroots::reduce::{assemble_iterate, solve_reduction, split_mixed, split_nonclassical};
use symroots::solution::SolutionSet;
use symroots::symmetry::{antisym_factor, classify, from_elementary, to_elementary, SigmaPoly, SymmetryClass};

const BITS: u32 = 200;

fn term() -> impl Strategy<Value = (u32, u32, i64, u8)> {
    (0u32..4, 0u32..4, -6i64..=6, 0u8..4)
}

/// Coefficients are integers, sometimes plus a multiple of `a` or `b`.
fn poly_with(max_terms: usize, with_params: bool) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(term(), 0..max_terms).prop_map(move |terms| {
        BiPoly::from_terms(
            ["x", "y"],
            terms.into_iter().map(|(i, j, c, k)| {
                let mut coeff = ParamPoly::from_int(c);
                if with_params && k > 1 {
                    let name = if k == 2 { "a" } else { "b" };
                    coeff = &coeff + &ParamPoly::param(name).scale(&Rational::from_integer((c % 3).into()));
                }
                (Mono2::new(i, j), coeff)
            }),
        )
    })
}

fn numeric_poly(max_terms: usize) -> impl Strategy<Value = BiPoly> {
    poly_with(max_terms, false)
}

fn symmetric(p: &BiPoly) -> BiPoly {
    p + &p.swap()
}

fn xy() -> BiPoly {
    &BiPoly::x() - &BiPoly::y()
}

fn half(p: &BiPoly) -> BiPoly {
    p.scale(&Rational::new(1.into(), 2.into()))
}

fn dist(a: &Complex, b: &Complex) -> f64 {
    magnitude(&Complex::with_val(BITS, a - b))
}

fn swap_closed(set: &SolutionSet) -> bool {
    let pts = set.evaluate(&BTreeMap::new(), 30).unwrap();
    pts.iter().all(|pt| {
        pts.iter().any(|q| {
            dist(&pt[0], &q[1]) < 1e-9 * (1.0 + magnitude(&pt[0]))
                && dist(&pt[1], &q[0]) < 1e-9 * (1.0 + magnitude(&pt[1]))
        })
    })
}

/// Every reported root solves the system; the full multiset must match
/// unless the reduction recorded a nonvanishing assumption.
fn preserved_under_assumptions(eqs: &[BiPoly], set: &SolutionSet) -> Result<(), String> {
    let v = verify_solutions(eqs, set, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    if v.passed {
        return Ok(());
    }
    let assumed = !set.assumptions.is_empty() || set.flags.iter().any(|f| f.contains("!= 0"));
    let only_missing = v
        .failures
        .iter()
        .all(|f| matches!(f.kind, FailureKind::Count { .. } | FailureKind::Match { .. }));
    if assumed && only_missing {
        Ok(())
    } else {
        Err(format!("{} = 0; {} = 0: {v}", eqs[0], eqs[1]))
    }
}

fn point(a: f64) -> ParamValues {
    [("a".to_string(), Complex::with_val(BITS, (a, 0)))].into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_into_symmetric_and_antisymmetric(p in poly_with(8, true)) {
        let s = half(&(&p + &p.swap()));
        let a = half(&(&p - &p.swap()));
        prop_assert_eq!(&(&s + &a), &p);
        prop_assert!(matches!(classify(&s).unwrap(), SymmetryClass::Symmetric | SymmetryClass::Zero));
        prop_assert!(matches!(classify(&a).unwrap(), SymmetryClass::AntiSymmetric | SymmetryClass::Zero));
    }

    #[test]
    fn antisym_factor_reconstructs(r in poly_with(6, true)) {
        let q = &p_minus_swap(&r);
        prop_assume!(!q.is_zero());
        let f = antisym_factor(q).unwrap();
        prop_assert_eq!(&(&xy() * &f), q);
        prop_assert!(matches!(classify(&f).unwrap(), SymmetryClass::Symmetric | SymmetryClass::Zero));
    }

    #[test]
    fn parse_render_round_trip(p in poly_with(10, true)) {
        let back = parse_poly(&p.to_string(), ["x", "y"]).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn classification_is_total(p in poly_with(6, true), q in poly_with(6, true)) {
        let text = format!("{p}=0; {q}=0");
        prop_assume!(!p.is_zero() || !q.is_zero());
        if let Ok(stmt) = parse(&text, None) {
            let mut seen = std::collections::BTreeSet::new();
            for e in &stmt.equations {
                e.lhs.identifiers(&mut seen);
                e.rhs.identifiers(&mut seen);
            }
            for id in &seen {
                let n = stmt.unknowns.contains(id) as u8 + stmt.parameters.contains(id) as u8;
                prop_assert_eq!(n, 1, "{}", id);
            }
        }
    }
}

fn p_minus_swap(r: &BiPoly) -> BiPoly {
    r - &r.swap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn elementary_round_trip(r in poly_with(8, true)) {
        let s = symmetric(&r);
        let e = to_elementary(&s).unwrap();
        prop_assert_eq!(from_elementary(&e), s);
    }

    #[test]
    fn elementary_round_trip_from_sigma(r in poly_with(6, true)) {
        let sig: SigmaPoly = r.into();
        let back = to_elementary(&from_elementary(&sig)).unwrap();
        prop_assert_eq!(back, sig);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn mixed_split_is_swap_closed(r in numeric_poly(5), s in numeric_poly(3)) {
        let p = symmetric(&r);
        let q = &xy() * &symmetric(&s);
        prop_assume!(!p.is_constant() && !q.is_zero());
        let Ok(red) = split_mixed(&p, &q) else { return Ok(()) };
        let Ok(set) = solve_reduction(&red, ["x", "y"]) else { return Ok(()) };
        prop_assume!(!set.is_degenerate());
        prop_assert!(swap_closed(&set));
        let checked = preserved_under_assumptions(&[p, q], &set);
        prop_assert!(checked.is_ok(), "{:?}", checked);
    }

    #[test]
    fn nonclassical_split_is_swap_closed(p in numeric_poly(5)) {
        prop_assume!(!p.is_constant() && p.swap() != p);
        let Ok(red) = split_nonclassical(&p, &p.zero_like()) else { return Ok(()) };
        let Ok(set) = solve_reduction(&red, ["x", "y"]) else { return Ok(()) };
        prop_assume!(!set.is_degenerate());
        prop_assert!(swap_closed(&set));
        let checked = preserved_under_assumptions(&[p.clone(), p.swap()], &set);
        prop_assert!(checked.is_ok(), "{:?}", checked);
    }

    #[test]
    fn diagonal_roots_solve_the_iterate(
        c in prop::collection::vec(-4i64..=4, 3..=4),
        a in -5.0f64..5.0,
    ) {
        let mut coeffs: Vec<ParamPoly> = c.iter().map(|&v| ParamPoly::from_int(v)).collect();
        coeffs[0] = &coeffs[0] + &ParamPoly::param("a");
        prop_assume!(!coeffs.last().unwrap().is_zero());
        let f = BiPoly::from_univariate(["x", "y"], &coeffs);
        prop_assume!(f.degree_x() >= 2);
        let pt = point(a);
        let diag = &f - &f.var_x();
        let iter = assemble_iterate(&f);
        let eval = |p: &BiPoly| -> Vec<Complex> {
            p.univariate_coeffs().unwrap().iter().map(|k| k.eval_complex(&pt, BITS).unwrap()).collect()
        };
        let roots = numeric_roots(&NumPoly::new(eval(&diag)), 30).unwrap();
        let big = NumPoly::new(eval(&iter));
        for z in &roots {
            let mut scale = 0.0;
            let az = magnitude(z);
            for (k, ck) in big.coeffs().iter().enumerate() {
                scale += magnitude(ck) * az.powi(k as i32);
            }
            let r = magnitude(&big.eval(z, BITS));
            prop_assert!(r <= 1e-20 * scale.max(1.0), "residual {} at {}", r, z);
        }
    }

    #[test]
    fn vieta_and_residuals_for_parametric_roots(
        c in prop::collection::vec(-5i64..=5, 3..=5),
        shift in 1i64..=3,
        samples in prop::collection::vec(-6.0f64..6.0, 20),
    ) {
        let mut coeffs: Vec<ParamPoly> = c.iter().map(|&v| ParamPoly::from_int(v)).collect();
        let n = coeffs.len() - 1;
        coeffs[0] = &coeffs[0] + &ParamPoly::param("a").scale(&Rational::from_integer(shift.into()));
        prop_assume!(!coeffs[n].is_zero());
        let poly = BiPoly::from_univariate(["x", "y"], &coeffs);
        let set = solve_univariate_radicals(&poly).unwrap();
        prop_assert_eq!(set.count() as usize, n);
        for a in samples {
            let pt = point(a);
            let cs: Vec<Complex> = coeffs.iter().map(|k| k.eval_complex(&pt, BITS).unwrap()).collect();
            let maxc = cs.iter().map(magnitude).fold(0.0, f64::max);
            let mut values = Vec::new();
            for r in &set.roots {
                let z = eval_radical(&r.expr, &pt, 30);
                let Ok(z) = z else { continue };
                for _ in 0..r.multiplicity {
                    values.push(z.clone());
                }
            }
            if values.len() != n {
                continue;
            }
            let np = NumPoly::new(cs.clone());
            for z in &values {
                let r = magnitude(&np.eval(z, BITS));
                let az = magnitude(z).max(1.0);
                prop_assert!(r < 1e-9 * (1.0 + maxc) * az.powi(n as i32), "residual {} at a = {}", r, a);
            }
            let lead = cs[n].clone();
            let mut sum = Complex::with_val(BITS, 0);
            let mut prod = Complex::with_val(BITS, 1);
            for z in &values {
                sum += z;
                prod *= z;
            }
            let want_sum = Complex::with_val(BITS, -&cs[n - 1]) / &lead;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let want_prod = Complex::with_val(BITS, &cs[0] * sign) / &lead;
            prop_assert!(dist(&sum, &want_sum) <= 1e-9 * (1.0 + magnitude(&want_sum)));
            prop_assert!(dist(&prod, &want_prod) <= 1e-9 * (1.0 + magnitude(&want_prod)));
        }
    }

    #[test]
    fn matching_is_symmetric(
        a in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..6),
        noise in prop::collection::vec((-1e-6f64..1e-6, -1e-6f64..1e-6), 6),
    ) {
        let xs: Vec<Complex> = a.iter().map(|&(r, i)| Complex::with_val(BITS, (r, i))).collect();
        let ys: Vec<Complex> = a
            .iter()
            .zip(&noise)
            .rev()
            .map(|(&(r, i), &(dr, di))| Complex::with_val(BITS, (r + dr, i + di)))
            .collect();
        for tol in [1e-9, 1e-5] {
            let m1 = match_roots(&xs, &ys, tol);
            let m2 = match_roots(&ys, &xs, tol);
            prop_assert_eq!(m1.success, m2.success);
            prop_assert_eq!(m1.max_distance, m2.max_distance);
        }
    }

    #[test]
    fn verification_ignores_equation_scale(num in 1i64..50, den in 1i64..50, neg in any::<bool>()) {
        let p = parse_poly("x^2+y^2-a", ["x", "y"]).unwrap();
        let q = parse_poly("x*y-b", ["x", "y"]).unwrap();
        let set = symroots::reduce::solve_symmetric_system(&p, &q).unwrap();
        let k = Rational::new((if neg { -num } else { num }).into(), den.into());
        let base = verify_solutions(&[p.clone(), q.clone()], &set, &VerifyOptions::default()).unwrap();
        let scaled = verify_solutions(&[p.scale(&k), q], &set, &VerifyOptions::default()).unwrap();
        prop_assert_eq!(base.passed, scaled.passed);
        prop_assert!((base.max_residual - scaled.max_residual).abs() < 1e-13);
    }
}
