use num_traits::Zero;

use super::expr::RadicalExpr;
use super::qpoly::{self, QPoly};
use crate::error::{Error, Result};
use crate::poly::{rational, BiPoly, ParamPoly, Rational};

type E = RadicalExpr;

/// One root with its multiplicity and an exact polynomial (ascending
/// coefficients) known to vanish at it.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEntry {
    pub expr: RadicalExpr,
    pub multiplicity: u32,
    pub factor: Vec<ParamPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<RootEntry>,
    pub degree: u32,
    /// Parameter expressions assumed nonzero.
    pub assumptions: Vec<ParamPoly>,
}

impl RootSet {
    pub fn count(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn exprs(&self) -> Vec<RadicalExpr> {
        self.roots.iter().map(|r| r.expr.clone()).collect()
    }
}

/// Closed-form roots of a univariate polynomial of degree 1 to 4.
pub fn solve_univariate_radicals(p: &BiPoly) -> Result<RootSet> {
    let coeffs = p.univariate_coeffs()?;
    solve_coeffs(&coeffs, true)
}

/// Roots of `sum coeffs[i] x^i`.
///
/// With `strict`, the degree must be at most 4. Otherwise rational
/// coefficient polynomials of higher degree are accepted as long as every
/// square-free factor left after removing rational roots has degree <= 4.
pub fn solve_coeffs(coeffs: &[ParamPoly], strict: bool) -> Result<RootSet> {
    let mut c: Vec<ParamPoly> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::NotSolvableHere(
            "a constant has no roots to solve for".into(),
        ));
    }
    let all_rational = c.iter().all(|x| x.is_constant());
    if n > 4 && (strict || !all_rational) {
        return Err(Error::NotSolvableHere(format!(
            "degree {n} exceeds the closed-form limit of 4"
        )));
    }
    let mut set = RootSet {
        roots: Vec::new(),
        degree: n as u32,
        assumptions: Vec::new(),
    };
    let lc = c.last().unwrap();
    if !lc.is_constant() {
        set.assumptions.push(lc.clone());
    }
    let k = c.iter().take_while(|x| x.is_zero()).count();
    if k > 0 {
        set.roots.push(RootEntry {
            expr: E::zero(),
            multiplicity: k as u32,
            factor: vec![ParamPoly::zero(), ParamPoly::one()],
        });
    }
    let rest = &c[k..];
    if rest.len() == 1 {
        return Ok(set);
    }
    if all_rational {
        let q: QPoly = rest.iter().map(|x| x.constant_value().unwrap()).collect();
        solve_rational(&q, &mut set)?;
    } else {
        for (expr, m) in formula(rest, &mut set.assumptions)? {
            set.roots.push(RootEntry {
                expr,
                multiplicity: m,
                factor: rest.to_vec(),
            });
        }
    }
    debug_assert_eq!(set.count(), set.degree);
    Ok(set)
}

fn to_param(q: &QPoly) -> Vec<ParamPoly> {
    q.iter().map(|c| ParamPoly::constant(c.clone())).collect()
}

fn solve_rational(q: &QPoly, set: &mut RootSet) -> Result<()> {
    for (g, m) in qpoly::yun(q) {
        let binomial = g.len() > 2 && g[1..g.len() - 1].iter().all(|x| x.is_zero());
        let mut g = g;
        if !binomial {
            for r in qpoly::rational_roots(&g) {
                set.roots.push(RootEntry {
                    expr: E::rational(r.clone()),
                    multiplicity: m,
                    factor: to_param(&vec![-r.clone(), Rational::from_integer(1.into())]),
                });
                g = qpoly::divrem(&g, &vec![-r, Rational::from_integer(1.into())]).0;
            }
        }
        if qpoly::degree(&g) == 0 {
            continue;
        }
        let mut pieces = Vec::new();
        while qpoly::degree(&g) > 4 {
            let Some(f) = qpoly::small_factor(&g) else {
                return Err(Error::NotSolvableHere(format!(
                    "an irreducible factor of degree {} remains",
                    qpoly::degree(&g)
                )));
            };
            g = qpoly::divrem(&g, &f).0;
            pieces.push(f);
        }
        pieces.push(g);
        for piece in pieces {
            let gp = to_param(&piece);
            let mut extra = Vec::new();
            for (expr, mm) in formula(&gp, &mut extra)? {
                set.roots.push(RootEntry {
                    expr,
                    multiplicity: m * mm,
                    factor: gp.clone(),
                });
            }
        }
    }
    Ok(())
}

fn ex(p: &ParamPoly) -> E {
    E::from_param_poly(p)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn pc(n: i64) -> ParamPoly {
    ParamPoly::from_int(n)
}

fn note(assumptions: &mut Vec<ParamPoly>, p: &ParamPoly) {
    if !p.is_constant() && !assumptions.contains(p) {
        assumptions.push(p.clone());
    }
}

/// Closed forms for a polynomial with nonzero constant term, degree 1..=4.
fn formula(c: &[ParamPoly], assumptions: &mut Vec<ParamPoly>) -> Result<Vec<(E, u32)>> {
    let n = c.len() - 1;
    if n >= 2 && c[1..n].iter().all(|x| x.is_zero()) {
        // x^n = -c0/cn
        let r = E::root(&E::div(&ex(&-&c[0]), &ex(&c[n])), n as u32);
        return Ok((0..n as u32)
            .map(|k| (&r * &E::unity(n as u32, k), 1))
            .collect());
    }
    match n {
        1 => Ok(vec![(E::div(&ex(&-&c[0]), &ex(&c[1])), 1)]),
        2 => Ok(quadratic(&c[2], &c[1], &c[0])),
        3 => Ok(cubic(&c[3], &c[2], &c[1], &c[0], assumptions)),
        4 => Ok(quartic(c, assumptions)),
        _ => Err(Error::NotSolvableHere(format!("degree {n}"))),
    }
}

fn quadratic(a: &ParamPoly, b: &ParamPoly, c: &ParamPoly) -> Vec<(E, u32)> {
    let disc = &(b * b) - &(&(a * c) * &pc(4));
    let den = ex(&(a * &pc(2)));
    let mb = ex(&-b);
    if disc.is_zero() {
        return vec![(E::div(&mb, &den), 2)];
    }
    let s = E::sqrt(&ex(&disc));
    vec![
        (E::div(&(&mb + &s), &den), 1),
        (E::div(&(&mb - &s), &den), 1),
    ]
}

fn cubic(
    a: &ParamPoly,
    b: &ParamPoly,
    c: &ParamPoly,
    d: &ParamPoly,
    assumptions: &mut Vec<ParamPoly>,
) -> Vec<(E, u32)> {
    let d0 = &(b * b) - &(&(a * c) * &pc(3));
    let d1 = &(&(&b.pow(3) * &pc(2)) - &(&(&(a * b) * c) * &pc(9))) + &(&(&a.pow(2) * d) * &pc(27));
    let disc = &(&d1 * &d1) - &(&d0.pow(3) * &pc(4));
    let three_a = ex(&(a * &pc(3)));
    if disc.is_zero() {
        if d0.is_zero() {
            return vec![(E::div(&ex(&-b), &three_a), 3)];
        }
        note(assumptions, &d0);
        let double = &(&(a * d) * &pc(9)) - &(b * c);
        let simple = &(&(&(&(a * b) * c) * &pc(4)) - &(&(&a.pow(2) * d) * &pc(9))) - &b.pow(3);
        return vec![
            (E::div(&ex(&double), &ex(&(&d0 * &pc(2)))), 2),
            (E::div(&ex(&simple), &ex(&(a * &d0))), 1),
        ];
    }
    let eb = ex(b);
    let w = |k: u32| E::unity(3, k);
    if d0.is_zero() {
        let cc = E::cbrt(&ex(&d1));
        return (0..3)
            .map(|k| (E::div(&E::neg(&(&eb + &(&w(k) * &cc))), &three_a), 1))
            .collect();
    }
    let ed0 = ex(&d0);
    let s = E::sqrt(&ex(&disc));
    let half = E::rational(rational(1, 2));
    let cp = E::cbrt(&(&(&ex(&d1) + &s) * &half));
    let cm = E::cbrt(&(&(&ex(&d1) - &s) * &half));
    let triple = E::div(&ex(&-b), &three_a);
    let branch = |cr: &E, k: u32| {
        let u = &w(k) * cr;
        E::div(&E::neg(&E::add(vec![eb.clone(), u.clone(), E::div(&ed0, &u)])), &three_a)
    };
    (0..3)
        .map(|k| {
            let inner = E::select(&cm, &branch(&cm, k), &triple);
            (E::select(&cp, &branch(&cp, k), &inner), 1)
        })
        .collect()
}

fn quartic(c: &[ParamPoly], assumptions: &mut Vec<ParamPoly>) -> Vec<(E, u32)> {
    let a4 = &c[4];
    // a4^3 p(y/a4) = y^4 + B y^3 + C y^2 + D y + F
    let bb = c[3].clone();
    let cc = &c[2] * a4;
    let dd = &c[1] * &a4.pow(2);
    let ff = &c[0] * &a4.pow(3);
    let q = |n: i64, d: i64| ParamPoly::constant(rational(n, d));
    // y = t - B/4: t^4 + p t^2 + q t + r
    let p = &cc - &(&bb.pow(2) * &q(3, 8));
    let qq = &(&dd - &(&(&bb * &cc) * &q(1, 2))) + &(&bb.pow(3) * &q(1, 8));
    let r = &(&(&ff - &(&(&bb * &dd) * &q(1, 4))) + &(&(&bb.pow(2) * &cc) * &q(1, 16)))
        - &(&bb.pow(4) * &q(3, 256));
    let shift = ex(&(&bb * &q(-1, 4)));
    let ea4 = ex(a4);
    let back = |t: &E| E::div(&(t + &shift), &ea4);
    let ep = ex(&p);
    let half = E::rational(rational(1, 2));

    // t^2 = (-p +- sqrt(p^2 - 4r)) / 2
    let dz = &p.pow(2) - &(&r * &pc(4));
    let bi = |s1: i64, s2: i64| {
        let z = &(&E::neg(&ep) + &E::scale(&E::sqrt(&ex(&dz)), &int(s1))) * &half;
        E::scale(&E::sqrt(&z), &int(s2))
    };
    if qq.is_zero() {
        if dz.is_zero() {
            if p.is_zero() {
                return vec![(back(&E::zero()), 4)];
            }
            let t = E::sqrt(&(&E::neg(&ep) * &half));
            return vec![(back(&t), 2), (back(&E::neg(&t)), 2)];
        }
        return [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .into_iter()
            .map(|(s1, s2)| (back(&bi(s1, s2)), 1))
            .collect();
    }
    // 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
    let res = vec![
        -&qq.pow(2),
        &(&p.pow(2) * &pc(2)) - &(&r * &pc(8)),
        &p * &pc(8),
        pc(8),
    ];
    let rset = solve_coeffs(&res, true).expect("resolvent cubic is monic up to a constant");
    for a in &rset.assumptions {
        note(assumptions, a);
    }
    let m = rset.roots[0].expr.clone();
    let wv = E::sqrt(&E::scale(&m, &int(2)));
    let eq2 = ex(&(&qq * &pc(2)));
    let two_p_m = &E::scale(&ep, &int(2)) + &E::scale(&m, &int(2));
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .into_iter()
        .map(|(s1, s2): (i64, i64)| {
            let inner = E::neg(&(&two_p_m + &E::scale(&E::div(&eq2, &wv), &int(s1))));
            let t = &(&E::scale(&wv, &int(s1)) + &E::scale(&E::sqrt(&inner), &int(s2))) * &half;
            (back(&E::select(&wv, &t, &bi(s1, s2))), 1)
        })
        .collect()
}
