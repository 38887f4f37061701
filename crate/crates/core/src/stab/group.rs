//! Numeric 2x2 matrix helpers for finite subgroups of GL2(C).

use num_complex::Complex;

use super::moebius::Mat2;
use crate::scalar::Real;

pub fn mat_mul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn det<T: Real>(a: &Mat2<T>) -> Complex<T> {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Inverse, or `None` for a singular matrix.
pub fn mat_inv<T: Real>(a: &Mat2<T>) -> Option<Mat2<T>> {
    let d = det(a);
    if d.norm() == T::zero() {
        return None;
    }
    Some([[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]])
}

pub fn identity<T: Real>() -> Mat2<T> {
    let (o, z) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
    [[o, z], [z, o]]
}

pub fn scalar<T: Real>(s: Complex<T>) -> Mat2<T> {
    let z = Complex::new(T::zero(), T::zero());
    [[s, z], [z, s]]
}

/// Largest entrywise distance.
pub fn distance<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> f64 {
    let mut best = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            best = best.max((a[i][j] - b[i][j]).norm().as_f64());
        }
    }
    best
}

pub fn position<T: Real>(set: &[Mat2<T>], m: &Mat2<T>, tol: f64) -> Option<usize> {
    set.iter().position(|x| distance(x, m) <= tol)
}

/// Whether `set` contains the identity and is closed under products and
/// inverses up to `tol`.
pub fn is_group<T: Real>(set: &[Mat2<T>], tol: f64) -> bool {
    if position(set, &identity(), tol).is_none() {
        return false;
    }
    set.iter().all(|a| {
        mat_inv(a).is_some_and(|inv| position(set, &inv, tol).is_some())
            && set.iter().all(|b| position(set, &mat_mul(a, b), tol).is_some())
    })
}

/// `exp(2 pi i k / n)`.
pub fn root_of_unity<T: Real>(k: usize, n: usize) -> Complex<T> {
    let theta = 2.0 * std::f64::consts::PI * (k % n) as f64 / n as f64;
    Complex::new(T::of(theta.cos()), T::of(theta.sin()))
}
