use std::collections::BTreeSet;

use super::flat::{Flat, Var};
use super::BiPoly;
use crate::error::{Error, Result};

fn param_order(polys: &[&BiPoly]) -> Vec<String> {
    let set: BTreeSet<String> = polys.iter().flat_map(|p| p.params()).collect();
    set.into_iter().collect()
}

/// Exact quotient `p / d`.
///
/// Long division in the leading unknown of `d` (the first unknown when it
/// occurs in `d`, otherwise the second); each step must divide exactly in the
/// remaining variables, so a non-constant parameter leading coefficient never
/// introduces fractions.
pub fn divide_exact(p: &BiPoly, d: &BiPoly) -> Result<BiPoly> {
    if !p.same_names(d) {
        return Err(Error::SymbolMismatch("divide_exact operands differ".into()));
    }
    if d.is_zero() {
        return Err(Error::NotDivisible("division by the zero polynomial".into()));
    }
    let lead = if d.degree_x() > 0 { 0 } else { 1 };
    let mut order = vec![Var::Unknown(lead), Var::Unknown(1 - lead)];
    order.extend(param_order(&[p, d]).into_iter().map(Var::Param));
    let fp = Flat::from_bipoly(p, &order);
    let fd = Flat::from_bipoly(d, &order);
    let q = fp
        .div_exact(&fd)
        .ok_or_else(|| Error::NotDivisible(format!("({p}) / ({d}) leaves a remainder")))?;
    Ok(q.to_bipoly(&order, p))
}

/// Resultant of `p` and `q` with respect to the unknown named `eliminate`.
///
/// Determinant of the Sylvester matrix by Bareiss fraction-free elimination;
/// every intermediate division is exact in the polynomial ring of the
/// remaining unknown and the parameters.
pub fn resultant_eliminate(p: &BiPoly, q: &BiPoly, eliminate: &str) -> Result<BiPoly> {
    if !p.same_names(q) {
        return Err(Error::SymbolMismatch("resultant operands differ".into()));
    }
    let idx = p
        .unknown_index(eliminate)
        .ok_or_else(|| Error::SymbolMismatch(format!("`{eliminate}` is not an unknown")))?;
    let m = p.degree_in(idx) as usize;
    let n = q.degree_in(idx) as usize;
    if m == 0 || n == 0 {
        return Err(Error::DegreeError(format!(
            "both polynomials need positive degree in {eliminate}"
        )));
    }
    let mut order = vec![Var::Unknown(1 - idx)];
    order.extend(param_order(&[p, q]).into_iter().map(Var::Param));
    let pc: Vec<Flat> = p
        .coeffs_in(idx)
        .iter()
        .map(|c| Flat::from_bipoly(c, &order))
        .collect();
    let qc: Vec<Flat> = q
        .coeffs_in(idx)
        .iter()
        .map(|c| Flat::from_bipoly(c, &order))
        .collect();

    let size = m + n;
    let mut mat = vec![vec![Flat::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    let det = bareiss_determinant(mat, order.len());
    Ok(det.to_bipoly(&order, p))
}

fn bareiss_determinant(mut mat: Vec<Vec<Flat>>, nvars: usize) -> Flat {
    let size = mat.len();
    let mut negate = false;
    let mut prev = Flat::one(nvars);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(i, k);
                    negate = !negate;
                }
                None => return Flat::zero(),
            }
        }
        if k + 1 == size {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            mat[i][k] = Flat::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
