//! Dense univariate polynomials over the rationals, ascending coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Rational;

pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &QPoly) -> usize {
    p.len().saturating_sub(1)
}

pub(crate) fn monic(p: &QPoly) -> QPoly {
    let lc = p.last().expect("nonzero polynomial").clone();
    p.iter().map(|c| c / &lc).collect()
}

pub(crate) fn derivative(p: &QPoly) -> QPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect(),
    )
}

pub(crate) fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lb = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a)
    }
}

/// Square-free decomposition: `p = lc * prod g_i^i` with each `g_i` monic,
/// square-free and pairwise coprime. Constant factors are omitted.
pub(crate) fn yun(p: &QPoly) -> Vec<(QPoly, u32)> {
    let f = monic(&trim(p.clone()));
    let mut out = Vec::new();
    if degree(&f) == 0 {
        return out;
    }
    let df = derivative(&f);
    let a0 = gcd(&f, &df);
    let mut b = divrem(&f, &a0).0;
    let mut c = divrem(&df, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while degree(&b) > 0 {
        let a = gcd(&b, &d);
        if degree(&a) > 0 {
            out.push((a.clone(), i));
        }
        b = divrem(&b, &a).0;
        c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

pub(crate) fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub(crate) fn eval(p: &QPoly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Primitive integer multiple of `p`.
fn integer_coeffs(p: &QPoly) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors of `n` when it factors over small primes; `None` if
/// the candidate list would be unreasonable.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= n && p <= limit {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        if &limit * &limit < n {
            return None;
        }
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
        if out.len() > 20_000 {
            return None;
        }
    }
    Some(out)
}

/// Distinct rational roots of a polynomial with nonzero constant term.
pub(crate) fn rational_roots(p: &QPoly) -> Vec<Rational> {
    let p = trim(p.clone());
    if degree(&p) == 0 {
        return vec![];
    }
    let z = integer_coeffs(&p);
    if z[0].is_zero() {
        return vec![];
    }
    let (Some(num), Some(den)) = (divisors(&z[0]), divisors(z.last().unwrap())) else {
        return vec![];
    };
    let mut out: Vec<Rational> = Vec::new();
    for d in &den {
        for n in &num {
            for s in [1, -1] {
                let r = Rational::new(n * s, d.clone());
                if !out.contains(&r) && eval(&p, &r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        b.to_f64()
            .unwrap_or(0.0)
            .partial_cmp(&a.to_f64().unwrap_or(0.0))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// A monic factor of degree 2 to 4 of a square-free `p`, found by
/// grouping numeric roots and confirmed by exact division.
pub(crate) fn small_factor(p: &QPoly) -> Option<QPoly> {
    use crate::numeric::complex_from_rational;
    use crate::numverify::{numeric_roots, NumPoly};
    use rug::Complex;

    let n = degree(p);
    if n < 4 || n > 24 {
        return None;
    }
    let bits = 256;
    let lead = integer_coeffs(p).last()?.abs();
    let lead_f = lead.to_f64()?;
    let roots = numeric_roots(&NumPoly::new(p.iter().map(|c| complex_from_rational(c, bits)).collect()), 40).ok()?;
    for k in 2..=4.min(n / 2) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut prod = vec![Complex::with_val(bits, 1)];
            for &i in &idx {
                let mut next = vec![Complex::with_val(bits, 0); prod.len() + 1];
                for (j, c) in prod.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= Complex::with_val(bits, c * &roots[i]);
                }
                prod = next;
            }
            let coeffs: Option<QPoly> = prod
                .iter()
                .map(|c| {
                    let (re, im) = (c.real().to_f64() * lead_f, c.imag().to_f64() * lead_f);
                    let r = re.round();
                    let ok = im.abs() < 1e-6 * re.abs().max(1.0)
                        && (re - r).abs() < 1e-6 * re.abs().max(1.0)
                        && r.abs() < 9.0e15;
                    ok.then(|| Rational::new(BigInt::from(r as i64), lead.clone()))
                })
                .collect();
            if let Some(f) = coeffs {
                if divrem(p, &f).1.is_empty() {
                    return Some(f);
                }
            }
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for j in pos..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::integer;

    fn q(v: &[i64]) -> QPoly {
        v.iter().map(|&c| integer(c)).collect()
    }

    #[test]
    fn square_free_parts() {
        // (x-1)^2 (x+2)^3 (x^2+1)
        let mut p = q(&[1]);
        for f in [q(&[-1, 1]), q(&[-1, 1]), q(&[2, 1]), q(&[2, 1]), q(&[2, 1]), q(&[1, 0, 1])] {
            let mut r = vec![Rational::zero(); p.len() + f.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    r[i + j] += a * b;
                }
            }
            p = r;
        }
        let parts = yun(&p);
        assert_eq!(parts, vec![(q(&[1, 0, 1]), 1), (q(&[-1, 1]), 2), (q(&[2, 1]), 3)]);
    }

    #[test]
    fn rational_root_search() {
        // 6x^3 - 5x^2 - 2x + 1 = (x-1)(3x-1)(2x+1)
        let roots = rational_roots(&q(&[1, -2, -5, 6]));
        assert_eq!(roots, vec![integer(1), Rational::new(1.into(), 3.into()), Rational::new((-1).into(), 2.into())]);
        assert!(rational_roots(&q(&[-2, 0, 1])).is_empty());
    }

    #[test]
    fn division() {
        let (qq, r) = divrem(&q(&[-1, 0, 0, 1]), &q(&[-1, 1]));
        assert_eq!(qq, q(&[1, 1, 1]));
        assert!(r.is_empty());
    }
}
