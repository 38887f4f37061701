//! Affine and projective Reed–Muller codes as evaluation codes.

use std::sync::Arc;

use thiserror::Error;

use crate::code::{linalg, LinearCode};
use crate::gf::{FiniteField, GfError};

/// Longest evaluation code the constructors will build.
pub const MAX_LENGTH: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RmError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("code length {0} exceeds the limit {MAX_LENGTH}")]
    TooLong(u128),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Exponent tuples spanning the evaluation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    /// All `(e_1..e_m)` with `sum e_i <= r` and `e_i <= q - 1`, lexicographic.
    pub fn affine(q: u32, r: u32, m: usize) -> Self {
        let exponents = tuples(q, m).into_iter().filter(|e| e.iter().sum::<u32>() <= r).collect();
        MonomialBasis { exponents }
    }

    /// All `(e_0..e_m)` with `sum e_i = r`, lexicographic.
    pub fn projective(r: u32, m: usize) -> Self {
        let exponents = tuples(r + 1, m + 1).into_iter().filter(|e| e.iter().sum::<u32>() == r).collect();
        MonomialBasis { exponents }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

/// All tuples in `[0, base)^len`, lexicographic with the first entry most
/// significant.
fn tuples(base: u32, len: usize) -> Vec<Vec<u32>> {
    let total = (base as usize).pow(len as u32);
    (0..total)
        .map(|mut v| {
            let mut t = vec![0u32; len];
            for slot in t.iter_mut().rev() {
                *slot = (v % base as usize) as u32;
                v /= base as usize;
            }
            t
        })
        .collect()
}

/// Representatives of the points of `P^m(GF(q))`: first nonzero coordinate
/// equal to 1, in lexicographic order of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePointSet {
    pub points: Vec<Vec<u32>>,
}

impl ProjectivePointSet {
    pub fn new(q: u32, m: usize) -> Self {
        let points = tuples(q, m + 1).into_iter().filter(|p| p.iter().find(|&&c| c != 0) == Some(&1)).collect();
        ProjectivePointSet { points }
    }
}

fn check_length(q: u32, m: usize, projective: bool) -> Result<(), RmError> {
    let qm = (q as u128).checked_pow(m as u32 + u32::from(projective));
    let n = match (qm, projective) {
        (Some(x), false) => x,
        (Some(x), true) => (x - 1) / (q as u128 - 1),
        (None, _) => u128::MAX,
    };
    if n > MAX_LENGTH as u128 {
        return Err(RmError::TooLong(n));
    }
    Ok(())
}

fn evaluate(field: &FiniteField, exps: &[u32], point: &[u32]) -> u8 {
    exps.iter().zip(point).fold(1u8, |acc, (&e, &x)| field.mul_raw(acc, field.pow_raw(x as u8, e)))
}

fn evaluation_code(field: Arc<FiniteField>, basis: &MonomialBasis, points: &[Vec<u32>]) -> LinearCode {
    let rows: Vec<Vec<u8>> =
        basis.exponents.iter().map(|e| points.iter().map(|p| evaluate(&field, e, p)).collect()).collect();
    let keep = linalg::independent_rows(&field, &rows);
    let rows = keep.into_iter().map(|i| rows[i].clone()).collect();
    LinearCode::from_raw(field, points.len(), rows).expect("independent evaluation rows")
}

/// `RM_q(r, m)`: evaluations of polynomials of degree at most `r` at all of
/// `GF(q)^m`. Exponents are reduced (`e_i <= q - 1`), so the generator rows
/// are the evaluations of a basis.
pub fn reed_muller(q: u32, r: u32, m: usize) -> Result<LinearCode, RmError> {
    if m == 0 {
        return Err(RmError::InvalidParameters("m must be at least 1".into()));
    }
    let field = Arc::new(FiniteField::new(q)?);
    check_length(q, m, false)?;
    let basis = MonomialBasis::affine(q, r, m);
    let points = tuples(q, m);
    Ok(evaluation_code(field, &basis, &points))
}

/// `PRM_q(r, m)`: evaluations of degree-`r` forms in `m + 1` variables at the
/// normalized representatives of `P^m(GF(q))`. Dependent monomial rows are
/// dropped, so `k` is the rank of the evaluation matrix.
pub fn projective_reed_muller(q: u32, r: u32, m: usize) -> Result<LinearCode, RmError> {
    if m == 0 || r == 0 {
        return Err(RmError::InvalidParameters("need r >= 1 and m >= 1".into()));
    }
    let field = Arc::new(FiniteField::new(q)?);
    check_length(q, m, true)?;
    let basis = MonomialBasis::projective(r, m);
    let points = ProjectivePointSet::new(q, m).points;
    Ok(evaluation_code(field, &basis, &points))
}

/// `PRM_q(r, m)` evaluated at a rescaled set of representatives: point `j`
/// is multiplied by the nonzero scalar `scales[j]`.
pub fn projective_reed_muller_rescaled(q: u32, r: u32, m: usize, scales: &[u32]) -> Result<LinearCode, RmError> {
    let field = Arc::new(FiniteField::new(q)?);
    check_length(q, m, true)?;
    let points = ProjectivePointSet::new(q, m).points;
    if scales.len() != points.len() || scales.iter().any(|&s| s == 0 || s >= q) {
        return Err(RmError::InvalidParameters("one nonzero scale per point".into()));
    }
    let scaled: Vec<Vec<u32>> = points
        .iter()
        .zip(scales)
        .map(|(p, &s)| p.iter().map(|&c| u32::from(field.mul_raw(c as u8, s as u8))).collect())
        .collect();
    Ok(evaluation_code(field, &MonomialBasis::projective(r, m), &scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::WeightEnumerator;

    #[test]
    fn rm2_1_3_is_extended_hamming() {
        let c = reed_muller(2, 1, 3).unwrap();
        assert_eq!((c.length(), c.dimension()), (8, 4));
        assert_eq!(c.enumerate_weights().unwrap(), WeightEnumerator::from_u64s(&[1, 0, 0, 0, 14, 0, 0, 0, 1]));
    }

    #[test]
    fn degree_zero_is_repetition() {
        for (q, m) in [(2, 3), (3, 2), (4, 2), (5, 1)] {
            let c = reed_muller(q, 0, m).unwrap();
            assert_eq!(c.dimension(), 1);
            assert!(c.generator()[0].iter().all(|&v| v == 1));
        }
    }

    #[test]
    fn rm4_2_2_dimension() {
        let c = reed_muller(4, 2, 2).unwrap();
        assert_eq!((c.length(), c.dimension()), (16, 6));
        assert_eq!(MonomialBasis::affine(4, 2, 2).len(), 6);
    }

    #[test]
    fn prm5_3_2_shape() {
        let c = projective_reed_muller(5, 3, 2).unwrap();
        assert_eq!((c.length(), c.dimension()), (31, 10));
        let pts = ProjectivePointSet::new(5, 2);
        assert_eq!(pts.points.len(), 31);
    }

    #[test]
    fn projective_points_are_pairwise_non_proportional() {
        for (q, m) in [(2u32, 2usize), (3, 2), (4, 2), (5, 2), (3, 3)] {
            let f = FiniteField::new(q).unwrap();
            let pts = ProjectivePointSet::new(q, m).points;
            assert_eq!(pts.len() as u32, (q.pow(m as u32 + 1) - 1) / (q - 1));
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    let proportional =
                        (1..q).any(|s| a.iter().zip(b).all(|(&x, &y)| u32::from(f.mul_raw(x as u8, s as u8)) == y));
                    assert!(!proportional);
                }
            }
        }
    }

    #[test]
    fn rm_is_monotone_in_r() {
        for (q, m) in [(2u32, 3usize), (3, 2), (4, 2)] {
            for r in 0..(m as u32 * (q - 1)) {
                let small = reed_muller(q, r, m).unwrap();
                let big = reed_muller(q, r + 1, m).unwrap();
                assert!(small.is_subcode_of(&big), "RM_{q}({r},{m}) not inside r+1");
            }
        }
    }

    #[test]
    fn rescaled_representatives_give_same_enumerator() {
        let base = projective_reed_muller(3, 2, 2).unwrap();
        let scales: Vec<u32> = (0..13).map(|j| 1 + (j % 2)).collect();
        let other = projective_reed_muller_rescaled(3, 2, 2, &scales).unwrap();
        assert_eq!(base.enumerate_weights().unwrap(), other.enumerate_weights().unwrap());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(reed_muller(6, 1, 2), Err(RmError::Field(_))));
        assert!(matches!(reed_muller(2, 1, 20), Err(RmError::TooLong(_))));
        assert!(matches!(projective_reed_muller(5, 0, 2), Err(RmError::InvalidParameters(_))));
    }
}
