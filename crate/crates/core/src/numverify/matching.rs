use rug::Complex;

use crate::numeric::magnitude;

#[derive(Clone, Debug, PartialEq)]
pub struct MatchReport {
    /// `(index in found, index in expected)`.
    pub pairing: Vec<(usize, usize)>,
    pub max_distance: f64,
    pub unmatched_found: Vec<usize>,
    pub unmatched_expected: Vec<usize>,
    pub success: bool,
}

fn distance(a: &Complex, b: &Complex) -> f64 {
    let prec = a.prec().0.max(b.prec().0);
    magnitude(&Complex::with_val(prec, a - b))
}

/// Greedy minimum-distance pairing: all pairs sorted by distance, ties
/// broken by index, each taken while both ends are free.
pub fn match_roots(found: &[Complex], expected: &[Complex], tol: f64) -> MatchReport {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(found.len() * expected.len());
    for (i, a) in found.iter().enumerate() {
        for (j, b) in expected.iter().enumerate() {
            pairs.push((distance(a, b), i, j));
        }
    }
    pairs.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let mut used_f = vec![false; found.len()];
    let mut used_e = vec![false; expected.len()];
    let mut pairing = Vec::new();
    let mut max_distance: f64 = 0.0;
    for (d, i, j) in pairs {
        if used_f[i] || used_e[j] {
            continue;
        }
        used_f[i] = true;
        used_e[j] = true;
        pairing.push((i, j));
        max_distance = max_distance.max(d);
    }
    pairing.sort();
    let unmatched_found: Vec<usize> = (0..found.len()).filter(|&i| !used_f[i]).collect();
    let unmatched_expected: Vec<usize> = (0..expected.len()).filter(|&j| !used_e[j]).collect();
    let success = found.len() == expected.len() && max_distance < tol;
    MatchReport {
        pairing,
        max_distance,
        unmatched_found,
        unmatched_expected,
        success,
    }
}
