//! Stabilizers of homogeneous weight enumerators in GL2(C).
//!
//! A matrix fixing `W(x, y)` permutes the roots of `W(x, 1)` (with
//! multiplicity) by a Möbius map. Fixing three reference roots and trying
//! every ordered image triple finds each candidate projective class; the
//! scalar is then recovered from one evaluation and every element is checked
//! by direct coefficient comparison.

pub mod certify;
pub mod fixtures;
pub mod group;
pub mod moebius;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::WeightEnumerator;
use crate::roots::{find_roots, square_free, RootError, RootSet};
use crate::scalar::Real;
use crate::wenum::{classify, divisibility, is_formally_self_dual, Classification, InvariantMatrix, WenumError};

pub use certify::{certify_distinct_cross_ratios, CriticalTuple};
pub use fixtures::rm2_dual_invariant_matrix;
pub use moebius::{cross_ratio, solve_moebius, Mat2, MoebiusCandidate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Wenum(#[from] WenumError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("inconclusive at eps = {eps:e}: tuple {tuple:?} cannot be separated from {competitor:?}")]
    Inconclusive { tuple: [usize; 4], competitor: [usize; 4], eps: f64 },
    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Infinite,
    FiniteGroup,
    TrivialCertified,
}

/// A verified element of the stabilizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct StabilizerElement<T: Real> {
    pub matrix: Mat2<T>,
    /// `(A W)(p) / W(p)` for the interpolated class representative `A`.
    pub lambda: Complex<T>,
    /// `max_i |(A W)_i - w_i| / max_i |w_i|`.
    pub residual: f64,
}

/// Two critical 4-tuples sharing their first three roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialCertificate {
    pub tuples: [CriticalTuple; 2],
    /// Value `|a~ - b~|` had to exceed.
    pub threshold: f64,
    pub eps: f64,
    #[serde(rename = "N")]
    pub bound: f64,
    /// Root centers the tuple indices refer to.
    pub centers: Vec<Complex<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct StabilizerReport<T: Real> {
    pub verdict: Verdict,
    pub classification: Classification,
    /// `d! * n`; absent for infinite stabilizers.
    #[serde(with = "crate::format::opt_bigint_string")]
    pub bound: Option<BigInt>,
    pub elements: Vec<StabilizerElement<T>>,
    /// Screened candidates whose verification failed.
    pub rejected: usize,
    /// Largest Δ dividing all weights.
    pub delta: u64,
    /// Whether `D_Δ` matches an element (only when Δ > 1 and the group is finite).
    pub contains_d_delta: Option<bool>,
    /// Whether `S_q` matches an element (only for formally self-dual input).
    pub contains_s_q: Option<bool>,
    pub certificate: Option<TrivialCertificate>,
    /// Root radius the search ran with.
    pub eps: Option<f64>,
}

impl<T: Real> StabilizerReport<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn matrices(&self) -> Vec<Mat2<T>> {
        self.elements.iter().map(|e| e.matrix).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabOptions {
    /// Target radius for the root disks.
    pub eps: f64,
    /// Additional attempts at `eps * 10^(-2k)`.
    pub max_precision_retries: usize,
}

impl Default for StabOptions {
    fn default() -> Self {
        StabOptions { eps: 1e-12, max_precision_retries: 3 }
    }
}

pub(crate) fn to_complex_coeffs<T: Real>(w: &WeightEnumerator) -> Vec<Complex<T>> {
    w.coeffs().iter().map(|c| Complex::new(T::of(c.to_f64().expect("finite coefficient")), T::zero())).collect()
}

/// Probe points `(0,1), (1,1), (1,2), (2,1), (1,3), (3,1), ...`, coprime pairs
/// ordered by sum.
fn probes() -> impl Iterator<Item = (u32, u32)> {
    std::iter::once((0, 1))
        .chain((2u32..).flat_map(|s| (1..s).map(move |a| (a, s - a)).filter(|&(a, b)| num_integer::gcd(a, b) == 1)))
}

/// First probe where `|W|` is not negligible against its terms.
fn choose_probe<T: Real>(w: &[Complex<T>]) -> (Complex<T>, Complex<T>) {
    for (a, b) in probes().take(64) {
        let (x, y) = (Complex::new(T::of(f64::from(a)), T::zero()), Complex::new(T::of(f64::from(b)), T::zero()));
        let value = moebius::eval_form(w, x, y).norm();
        let n = w.len() - 1;
        let size: T = w
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() * x.norm().powi(i as i32) * y.norm().powi((n - i) as i32))
            .fold(T::zero(), |s, t| s + t);
        if value > size * T::of(1e-6) {
            return (x, y);
        }
    }
    unreachable!("a nonzero form vanishes at no more than n points of the probe list")
}

fn run_with_retries<T: Real, R>(
    w: &WeightEnumerator,
    opts: StabOptions,
    mut attempt: impl FnMut(&RootSet<T>) -> Result<R, StabError>,
) -> Result<R, StabError> {
    let sf = square_free(w);
    let mut last = None;
    for k in 0..=opts.max_precision_retries {
        let eps = opts.eps * 10f64.powi(-2 * k as i32);
        let roots = match find_roots::<T>(&sf, eps) {
            Ok(r) => r,
            Err(
                e @ (RootError::PrecisionFailure { .. } | RootError::ClusterUnresolved(..) | RootError::Coincident),
            ) => {
                return Err(last.unwrap_or(StabError::Root(e)));
            }
            Err(e) => return Err(e.into()),
        };
        match attempt(&roots) {
            Ok(r) => return Ok(r),
            Err(e @ StabError::Inconclusive { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// The stabilizer of `W(x, y)`: `Infinite` when `W(x, 1)` has at most two
/// distinct roots, otherwise the full finite group.
pub fn compute_stabilizer<T: Real>(
    w: &WeightEnumerator,
    q: u32,
    opts: StabOptions,
) -> Result<StabilizerReport<T>, StabError> {
    let classification = classify(w, q)?;
    let delta = divisibility(w);
    let base = StabilizerReport {
        verdict: Verdict::Infinite,
        classification: classification.clone(),
        bound: None,
        elements: Vec::new(),
        rejected: 0,
        delta,
        contains_d_delta: None,
        contains_s_q: None,
        certificate: None,
        eps: None,
    };
    let bound = match &classification {
        Classification::ThreePlusRoots { bound, .. } => bound.clone(),
        _ => return Ok(base),
    };
    let coeffs = to_complex_coeffs::<T>(w);
    let (elements, rejected, eps) = run_with_retries::<T, _>(w, opts, |roots| {
        let (els, rejected) = search(&coeffs, roots)?;
        Ok((els, rejected, roots.eps.as_f64()))
    })?;

    let matrices: Vec<Mat2<T>> = elements.iter().map(|e| e.matrix).collect();
    let matches = |m: &InvariantMatrix| group::position(&matrices, &m.to_complex::<T>(), T::DEDUP_TOL).is_some();
    let contains_d_delta = (delta > 1).then(|| matches(&InvariantMatrix::Divisibility { delta }));
    let contains_s_q = is_formally_self_dual(w, q, &w.total()).then(|| matches(&InvariantMatrix::SelfDuality { q }));
    Ok(StabilizerReport {
        verdict: Verdict::FiniteGroup,
        bound: Some(bound),
        elements,
        rejected,
        contains_d_delta,
        contains_s_q,
        eps: Some(eps),
        ..base
    })
}

/// Screens every Möbius map sending the reference triple to an ordered triple
/// of roots, then lifts, twists and verifies the survivors.
fn search<T: Real>(w: &[Complex<T>], roots: &RootSet<T>) -> Result<(Vec<StabilizerElement<T>>, usize), StabError> {
    let d = roots.len();
    let n = w.len() - 1;
    let centers = roots.centers();
    let reference = [0usize, 1, 2];
    let z = reference.map(|i| centers[i]);
    let triples: Vec<[usize; 3]> = (0..d)
        .flat_map(|a| (0..d).flat_map(move |b| (0..d).map(move |c| [a, b, c])))
        .filter(|&[a, b, c]| a != b && a != c && b != c)
        .filter(|t| (0..3).all(|i| roots.roots[t[i]].multiplicity == roots.roots[reference[i]].multiplicity))
        .collect();

    let survivors: Vec<MoebiusCandidate<T>> = triples
        .par_iter()
        .filter_map(|&t| {
            let mut cand = solve_moebius(z, t.map(|i| centers[i])).ok()?;
            cand.source = t;
            permutes_roots(&cand, roots).then_some(cand)
        })
        .collect();

    let probe = choose_probe(w);
    let w_probe = moebius::eval_form(w, probe.0, probe.1);
    let tol = T::VERIFY_TOL;
    let mut elements: Vec<StabilizerElement<T>> = Vec::new();
    let mut rejected = 0;
    for cand in &survivors {
        let a = cand.matrix();
        let image = moebius::eval_form(w, a[0][0] * probe.0 + a[0][1] * probe.1, a[1][0] * probe.0 + a[1][1] * probe.1);
        let lambda = image / w_probe;
        if lambda.norm() == T::zero() || !lambda.re.is_finite() {
            rejected += 1;
            continue;
        }
        // mu^n lambda = 1, principal branch
        let (r, theta) = lambda.to_polar();
        let nn = T::of(n as f64);
        let mu = Complex::from_polar(r.powf(-T::one() / nn), -theta / nn);
        let mut ok = true;
        let mut twisted = Vec::with_capacity(n);
        for k in 0..n {
            let s = mu * group::root_of_unity::<T>(k, n);
            let m = [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]];
            let residual = moebius::relative_residual(&moebius::act(&m, w), w);
            if residual > tol {
                ok = false;
                break;
            }
            twisted.push(StabilizerElement { matrix: m, lambda, residual });
        }
        if !ok {
            rejected += 1;
            continue;
        }
        for e in twisted {
            if elements.iter().all(|x| group::distance(&x.matrix, &e.matrix) > T::DEDUP_TOL) {
                elements.push(e);
            }
        }
    }
    if elements.is_empty() {
        return Err(StabError::Verification("identity was not recovered".into()));
    }
    Ok((elements, rejected))
}

/// Whether the map sends every root disk onto a distinct disk of equal
/// multiplicity, up to `SCREEN_TOL` relative to the root modulus.
fn permutes_roots<T: Real>(cand: &MoebiusCandidate<T>, roots: &RootSet<T>) -> bool {
    let mut hit = vec![false; roots.len()];
    for r in &roots.roots {
        let Some(image) = cand.apply(r.center) else { return false };
        let (k, dist) = roots
            .roots
            .iter()
            .enumerate()
            .map(|(k, s)| (k, (s.center - image).norm()))
            .fold((0, T::infinity()), |best, cur| if cur.1 < best.1 { cur } else { best });
        let target = &roots.roots[k];
        let tol = target.radius + T::of(T::SCREEN_TOL) * (T::one() + target.center.norm());
        if !(dist <= tol) || hit[k] || target.multiplicity != r.multiplicity {
            return false;
        }
        hit[k] = true;
    }
    true
}

/// Certifies that the stabilizer consists of the scalars `ζ_n^k I` by
/// exhibiting two critical 4-tuples of roots sharing a 3-prefix.
pub fn certify_trivial<T: Real>(
    w: &WeightEnumerator,
    q: u32,
    opts: StabOptions,
) -> Result<StabilizerReport<T>, StabError> {
    let sf = square_free(w);
    if sf.degree() < 5 {
        return Err(StabError::Precondition(format!("W(x, 1) has {} distinct roots, need at least 5", sf.degree())));
    }
    let classification = classify(w, q)?;
    let bound = match &classification {
        Classification::ThreePlusRoots { bound, .. } => bound.clone(),
        other => unreachable!("five distinct roots but classified as {other:?}"),
    };
    let certificate = run_with_retries::<T, _>(w, opts, |roots| {
        let eps = roots.eps.as_f64();
        let n_bound = roots.bound.as_f64();
        if eps >= 0.5 {
            return Err(StabError::Hypothesis(format!("root radius {eps} is not below 1/2")));
        }
        let centers: Vec<Complex<f64>> =
            roots.roots.iter().map(|r| Complex::new(r.center.re.as_f64(), r.center.im.as_f64())).collect();
        let threshold = certify::separation_threshold(eps, n_bound);
        match certify::find_critical_pair(&centers, threshold) {
            certify::Search::Found(tuples) => {
                Ok(TrivialCertificate { tuples, threshold, eps, bound: n_bound, centers })
            }
            certify::Search::Inconclusive(tuple, competitor) => Err(StabError::Inconclusive { tuple, competitor, eps }),
        }
    })?;

    let n = w.n();
    let coeffs = to_complex_coeffs::<T>(w);
    let elements = (0..n)
        .map(|k| {
            let matrix = group::scalar(group::root_of_unity::<T>(k, n));
            let residual = moebius::relative_residual(&moebius::act(&matrix, &coeffs), &coeffs);
            StabilizerElement { matrix, lambda: Complex::new(T::one(), T::zero()), residual }
        })
        .collect();
    let eps = certificate.eps;
    Ok(StabilizerReport {
        verdict: Verdict::TrivialCertified,
        classification,
        bound: Some(bound),
        elements,
        rejected: 0,
        delta: divisibility(w),
        contains_d_delta: None,
        contains_s_q: None,
        certificate: Some(certificate),
        eps: Some(eps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gleason() -> WeightEnumerator {
        WeightEnumerator::from_u64s(&[1, 0, 0, 0, 14, 0, 0, 0, 1])
    }

    #[test]
    fn padded_full_space_has_a_torus() {
        // x^2 (x + 4y)^3: x -> s x, x + 4y -> t (x + 4y) with s^2 t^3 = 1
        let w = WeightEnumerator::monomial(2).product(&crate::wenum::full_space_enumerator(5, 3));
        let report = compute_stabilizer::<f64>(&w, 5, StabOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Infinite);
        let coeffs = to_complex_coeffs::<f64>(&w);
        for t in [0.5, 1.7, 3.0] {
            let s = f64::powf(t, -1.5);
            let c = |x: f64| Complex::new(x, 0.0);
            let m = [[c(s), c(0.0)], [c((t - s) / 4.0), c(t)]];
            assert!(moebius::relative_residual(&moebius::act(&m, &coeffs), &coeffs) < 1e-12);
        }
    }

    #[test]
    fn probe_order() {
        let p: Vec<(u32, u32)> = probes().take(7).collect();
        assert_eq!(p, vec![(0, 1), (1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4)]);
    }

    #[test]
    fn probe_skips_zeros() {
        // x^3 y + x y^3 vanishes at (0, 1)
        let w = to_complex_coeffs::<f64>(&WeightEnumerator::from_u64s(&[0, 1, 0, 1, 0]));
        let (x, y) = choose_probe(&w);
        assert_eq!((x.re, y.re), (1.0, 1.0));
    }

    #[test]
    fn pair_sum_is_infinite() {
        let w = WeightEnumerator::from_u64s(&[3, 0, 1]).pow(3);
        let r = compute_stabilizer::<f64>(&w, 4, StabOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Infinite);
        assert!(r.elements.is_empty());
    }

    #[test]
    fn gleason_group_contains_d4_and_s2() {
        let r = compute_stabilizer::<f64>(&gleason(), 2, StabOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::FiniteGroup);
        assert_eq!(r.delta, 4);
        assert_eq!(r.contains_d_delta, Some(true));
        assert_eq!(r.contains_s_q, Some(true));
        assert_eq!(r.order(), 192);
        assert!(group::is_group(&r.matrices(), 1e-6));
    }

    #[test]
    fn gleason_group_in_single_precision() {
        let opts = StabOptions { eps: 1e-4, max_precision_retries: 0 };
        let r = compute_stabilizer::<f32>(&gleason(), 2, opts).unwrap();
        assert_eq!(r.order(), 192);
    }

    #[test]
    fn trivial_needs_five_roots() {
        let w = WeightEnumerator::from_u64s(&[3, 0, 1]).pow(2);
        assert!(matches!(certify_trivial::<f64>(&w, 4, StabOptions::default()), Err(StabError::Precondition(_))));
    }

    #[test]
    fn gleason_is_not_certified_trivial() {
        let opts = StabOptions { eps: 1e-12, max_precision_retries: 0 };
        assert!(matches!(certify_trivial::<f64>(&gleason(), 2, opts), Err(StabError::Inconclusive { .. })));
    }

    #[test]
    fn report_json_roundtrip() {
        let r = compute_stabilizer::<f64>(&gleason(), 2, StabOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: StabilizerReport<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
