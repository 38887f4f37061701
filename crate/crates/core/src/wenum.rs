//! Algebra on weight enumerators: the MacWilliams transform, divisibility and
//! formal self-duality, and the classification of enumerators with at most
//! two distinct roots.
//!
//! Everything here is exact; no floating point is involved.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::WeightEnumerator;
use crate::poly::RatPoly;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WenumError {
    #[error("not a code enumerator: {0}")]
    NotACodeEnumerator(String),
    #[error("q = {0} is not a supported field size")]
    BadFieldSize(u32),
}

/// `(x + (q-1))^n`, the enumerator of `GF(q)^n`.
pub fn full_space_enumerator(q: u32, n: usize) -> WeightEnumerator {
    WeightEnumerator::from_u64s(&[u64::from(q) - 1, 1]).pow(n)
}

/// `(x^2 + (q-1))^half`, the enumerator of `half` copies of `<(1,1)>`.
pub fn pair_sum_enumerator(q: u32, half: usize) -> WeightEnumerator {
    WeightEnumerator::from_u64s(&[u64::from(q) - 1, 0, 1]).pow(half)
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// `(x + c)^k` as ascending coefficients.
fn shifted_power(c: &BigInt, k: usize) -> Vec<BigInt> {
    let binom = binomial_row(k);
    let mut cpow = BigInt::one();
    let mut out = vec![BigInt::zero(); k + 1];
    // coefficient of x^(k-j) is C(k,j) c^j
    for (j, b) in binom.iter().enumerate() {
        out[k - j] = b * &cpow;
        cpow *= c;
    }
    out
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Enumerator of the dual code:
/// `W_dual(x, y) = W(x + (q-1) y, x - y) / code_size`, by exact binomial
/// expansion. Fails when the division is not exact.
pub fn macwilliams(w: &WeightEnumerator, q: u32, code_size: &BigInt) -> Result<WeightEnumerator, WenumError> {
    if q < 2 {
        return Err(WenumError::BadFieldSize(q));
    }
    if code_size.is_zero() {
        return Err(WenumError::NotACodeEnumerator("code size is zero".into()));
    }
    let n = w.n();
    let qm1 = BigInt::from(q - 1);
    let minus_one = -BigInt::one();
    let plus: Vec<Vec<BigInt>> = (0..=n).map(|i| shifted_power(&qm1, i)).collect();
    let minus: Vec<Vec<BigInt>> = (0..=n).map(|i| shifted_power(&minus_one, i)).collect();

    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in w.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = convolve(&plus[i], &minus[n - i]);
        for (slot, t) in acc.iter_mut().zip(term) {
            *slot += a * t;
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in acc.into_iter().enumerate() {
        let (quot, rem) = c.div_rem(code_size);
        if !rem.is_zero() {
            return Err(WenumError::NotACodeEnumerator(format!(
                "coefficient of x^{i} is not divisible by the code size {code_size}"
            )));
        }
        out.push(quot);
    }
    WeightEnumerator::new(out).map_err(|e| WenumError::NotACodeEnumerator(e.to_string()))
}

/// Largest Δ dividing every weight that occurs with a nonzero count, i.e.
/// the gcd of those weights. The zero code has no nonzero weights; it gets 0,
/// the gcd of the empty set, since every Δ divides it.
pub fn divisibility(w: &WeightEnumerator) -> u64 {
    let n = w.n();
    w.coeffs()
        .iter()
        .enumerate()
        .filter(|(i, a)| *i < n && !a.is_zero())
        .fold(0u64, |g, (i, _)| g.gcd(&((n - i) as u64)))
}

/// Whether `W(x, ζ_Δ y) = W(x, y)`, checked on exponents: every `x^i y^(n-i)`
/// with nonzero coefficient has `Δ | n - i`.
pub fn fixed_by_d_delta(w: &WeightEnumerator, delta: u64) -> bool {
    let n = w.n();
    delta > 0 && w.coeffs().iter().enumerate().all(|(i, a)| a.is_zero() || ((n - i) as u64).is_multiple_of(delta))
}

/// `macwilliams(w) = w` and `code_size^2 = q^n`.
pub fn is_formally_self_dual(w: &WeightEnumerator, q: u32, code_size: &BigInt) -> bool {
    if code_size * code_size != BigInt::from(q).pow(w.n() as u32) {
        return false;
    }
    matches!(macwilliams(w, q, code_size), Ok(dual) if dual == *w)
}

/// Shape of an enumerator relative to the root-count dichotomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum Classification {
    /// `x^n`.
    ZeroCode { n: usize },
    /// `(x + (q-1))^n`.
    FullSpace { n: usize, q: u32 },
    /// `(x^2 + (q-1))^(n/2)`.
    PairSum { n: usize, q: u32 },
    /// `x^(n-m) (x + (q-1))^m` with `0 < m < n`: the full space on `m`
    /// coordinates and zero elsewhere. Two distinct roots, so the stabilizer
    /// is infinite like the three shapes above.
    PaddedFullSpace { n: usize, m: usize, q: u32 },
    /// At least three distinct roots of `W(x, 1)`. `bound = d! * n` caps the
    /// stabilizer order.
    ThreePlusRoots {
        n: usize,
        q: u32,
        distinct_roots: usize,
        #[serde(with = "crate::format::bigint_string")]
        bound: BigInt,
    },
}

impl Classification {
    pub fn has_infinite_stabilizer(&self) -> bool {
        !matches!(self, Classification::ThreePlusRoots { .. })
    }
}

/// Number of distinct complex roots of `W(x, 1)`, exactly:
/// `n - deg gcd(W, W')`.
pub fn distinct_root_count(w: &WeightEnumerator) -> usize {
    let f = RatPoly::from_ints(w.coeffs());
    let deg = f.degree().unwrap_or(0);
    let g = f.gcd(&f.derivative());
    deg - g.degree().unwrap_or(0)
}

pub fn stabilizer_order_bound(distinct_roots: usize, n: usize) -> BigInt {
    (1..=distinct_roots).fold(BigInt::from(n), |acc, i| acc * BigInt::from(i))
}

/// Classifies a code enumerator. The two-root shapes are recognized by
/// exact comparison; anything else must have at least three distinct roots.
pub fn classify(w: &WeightEnumerator, q: u32) -> Result<Classification, WenumError> {
    if !w.has_unit_leading() {
        return Err(WenumError::NotACodeEnumerator(format!(
            "leading coefficient a_n = {} (expected 1)",
            w.coeffs()[w.n()]
        )));
    }
    if q < 2 {
        return Err(WenumError::BadFieldSize(q));
    }
    let n = w.n();
    if *w == WeightEnumerator::monomial(n) {
        return Ok(Classification::ZeroCode { n });
    }
    if *w == full_space_enumerator(q, n) {
        return Ok(Classification::FullSpace { n, q });
    }
    if n.is_multiple_of(2) && *w == pair_sum_enumerator(q, n / 2) {
        return Ok(Classification::PairSum { n, q });
    }
    let zeros = w.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 && zeros < n {
        let m = n - zeros;
        if *w == WeightEnumerator::monomial(zeros).product(&full_space_enumerator(q, m)) {
            return Ok(Classification::PaddedFullSpace { n, m, q });
        }
    }
    let d = distinct_root_count(w);
    if d < 3 {
        return Err(WenumError::NotACodeEnumerator(format!(
            "{d} distinct roots but not of the form x^n, x^(n-m) (x+{0})^m or (x^2+{0})^(n/2)",
            q - 1
        )));
    }
    Ok(Classification::ThreePlusRoots { n, q, distinct_roots: d, bound: stabilizer_order_bound(d, n) })
}

/// The invariant matrices `D_Δ = diag(1, ζ_Δ)` and
/// `S_q = q^(-1/2) [[1, q-1], [1, -1]]`, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantMatrix {
    Divisibility { delta: u64 },
    SelfDuality { q: u32 },
}

impl InvariantMatrix {
    /// Rational part of the matrix.
    pub fn rational_part(&self) -> [[BigRational; 2]; 2] {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        match self {
            InvariantMatrix::Divisibility { .. } => [[r(1), r(0)], [r(0), r(1)]],
            InvariantMatrix::SelfDuality { q } => [[r(1), r(i64::from(*q) - 1)], [r(1), r(-1)]],
        }
    }

    /// Numeric value, with `ζ_Δ = exp(2πi/Δ)`.
    pub fn to_complex<T: Real>(&self) -> [[Complex<T>; 2]; 2] {
        let re = |x: &BigRational| T::of(x.to_f64().unwrap());
        let m = self.rational_part();
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[i][j] = Complex::new(re(x), T::zero());
            }
        }
        match self {
            InvariantMatrix::Divisibility { delta } => {
                let theta = T::TAU() / T::of(*delta as f64);
                out[1][1] = Complex::from_polar(T::one(), theta);
            }
            InvariantMatrix::SelfDuality { q } => {
                let s = T::one() / T::of(f64::from(*q)).sqrt();
                for row in out.iter_mut() {
                    for x in row.iter_mut() {
                        *x = *x * s;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigInt {
        BigInt::from(x)
    }

    fn gleason() -> WeightEnumerator {
        WeightEnumerator::from_u64s(&[1, 0, 0, 0, 14, 0, 0, 0, 1])
    }

    #[test]
    fn macwilliams_examples() {
        assert_eq!(macwilliams(&gleason(), 2, &big(16)).unwrap(), gleason());
        for q in [2, 3, 4, 5] {
            let zero = WeightEnumerator::monomial(6);
            assert_eq!(macwilliams(&zero, q, &big(1)).unwrap(), full_space_enumerator(q, 6));
        }
    }

    #[test]
    fn macwilliams_rejects_inexact_division() {
        let w = WeightEnumerator::from_u64s(&[1, 0, 1]);
        assert!(matches!(macwilliams(&w, 2, &big(3)), Err(WenumError::NotACodeEnumerator(_))));
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility(&gleason()), 4);
        for q in [2u32, 3, 4, 5] {
            assert_eq!(divisibility(&pair_sum_enumerator(q, 1)), 2);
        }
        assert_eq!(divisibility(&WeightEnumerator::monomial(4)), 0);
        assert!(fixed_by_d_delta(&gleason(), 4));
        assert!(fixed_by_d_delta(&gleason(), 2));
        assert!(!fixed_by_d_delta(&gleason(), 8));
    }

    #[test]
    fn formal_self_duality() {
        for half in 1..6 {
            let w = pair_sum_enumerator(2, half);
            assert!(is_formally_self_dual(&w, 2, &big(1 << half)));
        }
        assert!(!is_formally_self_dual(&WeightEnumerator::monomial(4), 2, &big(1)));
        assert!(is_formally_self_dual(&gleason(), 2, &big(16)));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&WeightEnumerator::monomial(5), 3).unwrap(), Classification::ZeroCode { n: 5 });
        assert_eq!(classify(&full_space_enumerator(5, 3), 5).unwrap(), Classification::FullSpace { n: 3, q: 5 });
        assert_eq!(classify(&pair_sum_enumerator(4, 2), 4).unwrap(), Classification::PairSum { n: 4, q: 4 });
        match classify(&gleason(), 2).unwrap() {
            Classification::ThreePlusRoots { distinct_roots, bound, n, .. } => {
                assert_eq!(n, 8);
                assert_eq!(distinct_roots, 8);
                assert_eq!(bound, big(40320 * 8));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_coordinates_leave_two_roots() {
        let code = crate::code::LinearCode::from_indices(3, 4, &[vec![1, 0, 0, 0], vec![0, 0, 2, 0]]).unwrap();
        let w = code.enumerate_weights().unwrap();
        assert_eq!(classify(&w, 3).unwrap(), Classification::PaddedFullSpace { n: 4, m: 2, q: 3 });
        assert!(classify(&w, 3).unwrap().has_infinite_stabilizer());
        // a zero coordinate next to a pair-sum block gives three roots
        let padded_pair = WeightEnumerator::monomial(1).product(&pair_sum_enumerator(3, 1));
        assert!(!classify(&padded_pair, 3).unwrap().has_infinite_stabilizer());
    }

    #[test]
    fn classify_errors() {
        let not_monic = WeightEnumerator::from_u64s(&[1, 2]);
        assert!(classify(&not_monic, 2).is_err());
        // (x+2)^3 over GF(5): one distinct root but not a code shape.
        let odd = WeightEnumerator::from_u64s(&[2, 1]).pow(3);
        assert!(matches!(classify(&odd, 5), Err(WenumError::NotACodeEnumerator(_))));
    }

    #[test]
    fn invariant_matrices_numeric() {
        let d4 = InvariantMatrix::Divisibility { delta: 4 }.to_complex::<f64>();
        assert!((d4[1][1] - Complex::new(0.0, 1.0)).norm() < 1e-15);
        let s2 = InvariantMatrix::SelfDuality { q: 2 }.to_complex::<f64>();
        assert!((s2[0][1].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((s2[1][1].re + 0.5f64.sqrt()).abs() < 1e-15);
    }
}
