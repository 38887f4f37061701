//! Cross ratios, Möbius interpolation and the linear action on binary forms.

use num_complex::Complex;
use num_traits::{Num, Zero};
use serde::{Deserialize, Serialize};

use super::StabError;
use crate::scalar::Real;

/// `[[a, b], [c, d]]`, acting on forms by `W(x, y) -> W(ax + by, cx + dy)`
/// and on roots of `W(x, 1)` by `z -> (az + b) / (cz + d)`.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

/// `[z1, z2, z3, z4] = (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))`, over any
/// field-like type (floating complex numbers or exact rationals).
pub fn cross_ratio<C: Num + Clone>(z: [C; 4]) -> Result<C, StabError> {
    let [z1, z2, z3, z4] = z;
    let den = (z1.clone() - z4.clone()) * (z2.clone() - z3.clone());
    if den.is_zero() {
        return Err(StabError::Degenerate("cross ratio of coincident points".into()));
    }
    Ok((z1 - z3) * (z2 - z4) / den)
}

/// A Möbius map interpolating three points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct MoebiusCandidate<T: Real> {
    /// `(a, b, c, d)` scaled so the largest-modulus entry is 1.
    pub entries: [Complex<T>; 4],
    /// Root indices `(w1, w2, w3)` the reference triple is sent to.
    pub source: [usize; 3],
}

impl<T: Real> MoebiusCandidate<T> {
    pub fn matrix(&self) -> Mat2<T> {
        let [a, b, c, d] = self.entries;
        [[a, b], [c, d]]
    }

    /// Image of `z`, or `None` when it is sent to infinity.
    pub fn apply(&self, z: Complex<T>) -> Option<Complex<T>> {
        let [a, b, c, d] = self.entries;
        let den = c * z + d;
        if den.norm() == T::zero() {
            return None;
        }
        Some((a * z + b) / den)
    }
}

fn det3<T: Real>(m: [[Complex<T>; 3]; 3]) -> Complex<T> {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The Möbius map sending `z_i` to `w_i`: the null vector of the system
/// `z_i a + b - w_i z_i c - w_i d = 0` from signed 3x3 minors, normalized so
/// its largest-modulus entry equals 1.
pub fn solve_moebius<T: Real>(z: [Complex<T>; 3], w: [Complex<T>; 3]) -> Result<MoebiusCandidate<T>, StabError> {
    for (name, p) in [("source", z), ("target", w)] {
        if p[0] == p[1] || p[0] == p[2] || p[1] == p[2] {
            return Err(StabError::Degenerate(format!("{name} points are not distinct")));
        }
    }
    let one = Complex::new(T::one(), T::zero());
    let rows: Vec<[Complex<T>; 4]> = (0..3).map(|i| [z[i], one, -(w[i] * z[i]), -w[i]]).collect();
    let minor = |skip: usize| {
        let mut m = [[Complex::zero(); 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            let mut c = 0;
            for (j, &v) in row.iter().enumerate() {
                if j != skip {
                    m[r][c] = v;
                    c += 1;
                }
            }
        }
        det3(m)
    };
    let mut v = [minor(0), -minor(1), minor(2), -minor(3)];
    let (pivot, scale) =
        v.iter()
            .enumerate()
            .map(|(i, x)| (i, x.norm()))
            .fold((0, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
    if scale == T::zero() {
        return Err(StabError::Degenerate("interpolation system has nullity above 1".into()));
    }
    let p = v[pivot];
    for x in v.iter_mut() {
        *x = *x / p;
    }
    let det = v[0] * v[3] - v[1] * v[2];
    if det.norm() <= T::epsilon() * T::of(16.0) {
        return Err(StabError::Degenerate("interpolating map is singular".into()));
    }
    Ok(MoebiusCandidate { entries: v, source: [0, 0, 0] })
}

/// Coefficients (ascending in x) of `W(ax + by, cx + dy)` for the form with
/// ascending coefficients `w`.
pub fn act<T: Real>(m: &Mat2<T>, w: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = w.len() - 1;
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    // (ax + by)^i and (cx + dy)^j, ascending in x
    let powers = |lead: Complex<T>, tail: Complex<T>| {
        let mut out = vec![vec![one]];
        for i in 1..=n {
            let prev = &out[i - 1];
            let mut next = vec![zero; i + 1];
            for (k, &p) in prev.iter().enumerate() {
                next[k] = next[k] + p * tail;
                next[k + 1] = next[k + 1] + p * lead;
            }
            out.push(next);
        }
        out
    };
    let first = powers(m[0][0], m[0][1]);
    let second = powers(m[1][0], m[1][1]);
    let mut out = vec![zero; n + 1];
    for (i, &c) in w.iter().enumerate() {
        if c == zero {
            continue;
        }
        for (a, &u) in first[i].iter().enumerate() {
            let cu = c * u;
            for (b, &v) in second[n - i].iter().enumerate() {
                out[a + b] = out[a + b] + cu * v;
            }
        }
    }
    out
}

/// `W(x, y)` for ascending coefficients `w`.
pub fn eval_form<T: Real>(w: &[Complex<T>], x: Complex<T>, y: Complex<T>) -> Complex<T> {
    // Horner in x over the terms w_i y^(n-i)
    let n = w.len() - 1;
    let mut ypow = Complex::new(T::one(), T::zero());
    let mut terms = vec![Complex::new(T::zero(), T::zero()); n + 1];
    for i in (0..=n).rev() {
        terms[i] = w[i] * ypow;
        ypow = ypow * y;
    }
    terms.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, &t| acc * x + t)
}

/// `max_i |u_i - v_i| / max_i |v_i|`.
pub fn relative_residual<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> f64 {
    let scale = v.iter().map(|c| c.norm().as_f64()).fold(0.0, f64::max);
    let diff = u.iter().zip(v).map(|(a, b)| (*a - *b).norm().as_f64()).fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
