//! Certified inequality of cross ratios and the search for critical 4-tuples.
//!
//! For approximations `x~_j` within `eps` of roots `x_j` with `|x_j| <= N`,
//! the products `a = (x1-x3)(x2-x4)(x5-x8)(x6-x7)` and
//! `b = (x1-x4)(x2-x3)(x5-x7)(x6-x8)` vanish together exactly when the cross
//! ratios `[x1..x4]` and `[x5..x8]` agree, and `|a~ - a|` is at most
//! `(2N + 2 eps)^4 - (2N)^4`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::StabError;
use crate::scalar::Real;

/// Relative rounding allowance when `a~ - b~` is evaluated in f64: four
/// differences and three complex products on each side.
const EVAL_SLACK: f64 = 32.0 * f64::EPSILON;

/// `[x1..x4]` and `[x5..x8]` are certified distinct when
/// `|a~ - b~| > 120 N^3 eps`. Requires `eps < 1/2` and `|x~_j| <= N`.
pub fn certify_distinct_cross_ratios<T: Real>(x: &[Complex<T>; 8], eps: f64, n: f64) -> Result<bool, StabError> {
    check_hypotheses(eps)?;
    let x: Vec<Complex<f64>> = x.iter().map(|z| Complex::new(z.re.as_f64(), z.im.as_f64())).collect();
    if let Some(j) = x.iter().position(|z| z.norm() > n) {
        return Err(StabError::Hypothesis(format!("|x_{}| = {} exceeds N = {n}", j + 1, x[j].norm())));
    }
    let (a, b) = products(&x);
    Ok((a - b).norm() > 120.0 * n.powi(3) * eps)
}

fn check_hypotheses(eps: f64) -> Result<(), StabError> {
    if !(0.0..0.5).contains(&eps) {
        return Err(StabError::Hypothesis(format!("eps = {eps} must lie in [0, 1/2)")));
    }
    Ok(())
}

/// `(a~, b~)` for eight points.
pub fn products(x: &[Complex<f64>]) -> (Complex<f64>, Complex<f64>) {
    let a = (x[0] - x[2]) * (x[1] - x[3]) * (x[4] - x[7]) * (x[5] - x[6]);
    let b = (x[0] - x[3]) * (x[1] - x[2]) * (x[4] - x[6]) * (x[5] - x[7]);
    (a, b)
}

/// Largest possible `|a~ - a|`: `(2N + 2 eps)^4 - (2N)^4`, expanded so every
/// term is positive, nudged upward.
pub fn perturbation_bound(eps: f64, n: f64) -> f64 {
    let (m, d) = (2.0 * n, 2.0 * eps);
    let exact = 4.0 * m.powi(3) * d + 6.0 * m * m * d * d + 4.0 * m * d.powi(3) + d.powi(4);
    exact * (1.0 + 1e-12)
}

/// Threshold used by the triviality search: the larger of `120 N^3 eps` and
/// twice [`perturbation_bound`].
pub fn separation_threshold(eps: f64, n: f64) -> f64 {
    (120.0 * n.powi(3) * eps).max(2.0 * perturbation_bound(eps, n))
}

/// A 4-tuple of root indices whose cross ratio is certified different from
/// that of every ordered 4-tuple outside its V4-orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalTuple {
    pub indices: [usize; 4],
    pub cross_ratio: Complex<f64>,
    /// Smallest `|a~ - b~|` over all competing tuples.
    pub gap: f64,
}

/// `[z_i1, z_i2, z_i3, z_i4]` permuted by the four elements of V4.
pub fn v4_orbit(t: [usize; 4]) -> [[usize; 4]; 4] {
    let [a, b, c, d] = t;
    [[a, b, c, d], [b, a, d, c], [c, d, a, b], [d, c, b, a]]
}

/// Outcome of the scan for two critical tuples sharing a 3-prefix.
pub(crate) enum Search {
    Found([CriticalTuple; 2]),
    /// First tuple that failed to certify and the competitor responsible.
    Inconclusive([usize; 4], [usize; 4]),
}

/// Prefixes examined before the search gives up.
const MAX_PREFIXES: usize = 4096;

pub(crate) fn find_critical_pair(centers: &[Complex<f64>], threshold: f64) -> Search {
    let d = centers.len();
    let diff: Vec<Vec<Complex<f64>>> = centers.iter().map(|&zi| centers.iter().map(|&zj| zi - zj).collect()).collect();
    let mut first_failure = None;
    let mut prefixes = 0;
    for i1 in 0..d {
        for i2 in (0..d).filter(|&i| i != i1) {
            for i3 in (0..d).filter(|&i| i != i1 && i != i2) {
                prefixes += 1;
                if prefixes > MAX_PREFIXES {
                    break;
                }
                let mut found: Vec<CriticalTuple> = Vec::new();
                for i4 in (0..d).filter(|&i| i != i1 && i != i2 && i != i3) {
                    let t = [i1, i2, i3, i4];
                    match check_tuple(&diff, t, threshold) {
                        Ok(gap) => {
                            let cr = (diff[i1][i3] * diff[i2][i4]) / (diff[i1][i4] * diff[i2][i3]);
                            found.push(CriticalTuple { indices: t, cross_ratio: cr, gap });
                            if found.len() == 2 {
                                let second = found.pop().unwrap();
                                let first = found.pop().unwrap();
                                return Search::Found([first, second]);
                            }
                        }
                        Err(other) => {
                            first_failure.get_or_insert((t, other));
                        }
                    }
                }
            }
        }
    }
    let (t, u) = first_failure.unwrap_or(([0, 1, 2, 3], [0, 1, 2, 3]));
    Search::Inconclusive(t, u)
}

/// Smallest gap against all competitors, or the first competitor (in
/// lexicographic order) that cannot be separated.
fn check_tuple(diff: &[Vec<Complex<f64>>], t: [usize; 4], threshold: f64) -> Result<f64, [usize; 4]> {
    let d = diff.len();
    let orbit = v4_orbit(t);
    let pa = diff[t[0]][t[2]] * diff[t[1]][t[3]];
    let pb = diff[t[0]][t[3]] * diff[t[1]][t[2]];
    let per_first: Vec<Result<f64, [usize; 4]>> = (0..d)
        .into_par_iter()
        .map(|j1| {
            let mut gap = f64::INFINITY;
            for j2 in (0..d).filter(|&j| j != j1) {
                for j3 in (0..d).filter(|&j| j != j1 && j != j2) {
                    for j4 in (0..d).filter(|&j| j != j1 && j != j2 && j != j3) {
                        let u = [j1, j2, j3, j4];
                        if orbit.contains(&u) {
                            continue;
                        }
                        let a = pa * diff[j1][j4] * diff[j2][j3];
                        let b = pb * diff[j1][j3] * diff[j2][j4];
                        let g = (a - b).norm();
                        if g - EVAL_SLACK * (a.norm() + b.norm()) <= threshold {
                            return Err(u);
                        }
                        gap = gap.min(g);
                    }
                }
            }
            Ok(gap)
        })
        .collect();
    per_first.into_iter().try_fold(f64::INFINITY, |acc, r| r.map(|g| acc.min(g)))
}
