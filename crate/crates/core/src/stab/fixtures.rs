//! Closed-form enumerators of binary first-order Reed–Muller codes and the
//! extra invariant of their duals.

use num_bigint::BigInt;
use num_complex::Complex;

use super::moebius::{act, relative_residual, Mat2};
use super::{to_complex_coeffs, StabError, StabilizerElement};
use crate::code::WeightEnumerator;
use crate::scalar::Real;
use crate::wenum::macwilliams;

/// `x^(2^m) + 2(2^m - 1) x^(2^(m-1)) y^(2^(m-1)) + y^(2^m)`.
pub fn rm2_first_order_enumerator(m: u32) -> WeightEnumerator {
    let n = 1usize << m;
    let mut coeffs = vec![0u64; n + 1];
    coeffs[0] = 1;
    coeffs[n / 2] = 2 * (n as u64 - 1);
    coeffs[n] = 1;
    WeightEnumerator::from_u64s(&coeffs)
}

/// Enumerator of `RM_2(m-2, m)`, the dual of `RM_2(1, m)`.
pub fn rm2_dual_enumerator(m: u32) -> WeightEnumerator {
    let size = BigInt::from(1u64) << (m + 1);
    macwilliams(&rm2_first_order_enumerator(m), 2, &size).expect("genuine code enumerator")
}

/// `[[u, u - 1], [u - 1, u]]` with `u = (zeta + 1) / 2`.
pub fn rm2_dual_matrix<T: Real>(zeta: Complex<T>) -> Mat2<T> {
    let half = T::of(0.5);
    let one = Complex::new(T::one(), T::zero());
    let u = (zeta + one) * half;
    let v = u - one;
    [[u, v], [v, u]]
}

/// Invariant of `RM_2(m-2, m)` beyond `D_4` and `S_2`: [`rm2_dual_matrix`]
/// at the 2^m-th root of unity `zeta = exp(2 pi i / 2^(m-1))`, checked
/// against the enumerator obtained by MacWilliams from the closed form of
/// `RM_2(1, m)`.
///
/// The matrix scales `x + y` by `zeta` and fixes `x - y`, and the enumerator
/// contains `(x + y)^(2^(m-1))`, so `zeta^(2^(m-1)) = 1` is needed; a
/// primitive 2^m-th root does not work.
pub fn rm2_dual_invariant_matrix<T: Real>(m: u32) -> Result<StabilizerElement<T>, StabError> {
    if m < 3 {
        return Err(StabError::Precondition(format!("m = {m}, need m >= 3")));
    }
    if m > 12 {
        return Err(StabError::Precondition(format!("m = {m} is beyond the supported length")));
    }
    let theta = std::f64::consts::TAU / f64::from(1u32 << (m - 1));
    let matrix = rm2_dual_matrix(Complex::new(T::of(theta.cos()), T::of(theta.sin())));
    let w = to_complex_coeffs::<T>(&rm2_dual_enumerator(m));
    let residual = relative_residual(&act(&matrix, &w), &w);
    if residual > T::VERIFY_TOL {
        return Err(StabError::Verification(format!("matrix leaves residual {residual:e} on RM_2({}, {m})", m - 2)));
    }
    Ok(StabilizerElement { matrix, lambda: Complex::new(T::one(), T::zero()), residual })
}
