//! Certified complex roots of `W(x, 1)`.
//!
//! The enumerator is first split exactly into square-free factors
//! `W = prod f_j^j` over Q. Roots of each factor are approximated by an
//! Aberth–Ehrlich iteration in the working float type, then polished by
//! Weierstrass corrections evaluated in exact rational arithmetic, and
//! finally certified: with `P` the square-free part of degree `d` and
//! approximations `z_j`, the disk
//!
//! ```text
//! |z - z_j| <= d |P(z_j)| / |lc(P) prod_{k != j} (z_j - z_k)|
//! ```
//!
//! contains a root of `P`, and when the disks are pairwise disjoint each
//! holds exactly one. Radii are computed from exact rational values at the
//! (dyadic) centers and rounded upward, so the certificate does not depend
//! on floating-point evaluation.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::code::WeightEnumerator;
use crate::poly::{yun, RatPoly};
use crate::scalar::Real;

/// Sweep cap per precision level.
pub const MAX_SWEEPS: usize = 1000;
/// Number of precision levels tried before giving up.
pub const PRECISION_LEVELS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("target radius must be positive, got {0}")]
    BadTarget(f64),
    #[error("precision failure: certified radius {achieved:e} exceeds target {target:e}")]
    PrecisionFailure { achieved: f64, target: f64 },
    #[error("root disks {0} and {1} overlap at the working precision")]
    ClusterUnresolved(usize, usize),
    #[error("root iteration produced coincident approximations")]
    Coincident,
}

type Exact = Complex<BigRational>;

/// One square-free factor `f` of `W(x, 1)` with the multiplicity of its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeFactor {
    /// Primitive integer coefficients, ascending, positive leading coefficient.
    pub poly: Vec<BigInt>,
    pub multiplicity: usize,
}

/// Exact square-free decomposition `W(x, 1) = c * prod_j f_j^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeData {
    /// Product of the factors: primitive, positive leading coefficient.
    pub squarefree: Vec<BigInt>,
    pub factors: Vec<SquareFreeFactor>,
}

impl SquareFreeData {
    pub fn degree(&self) -> usize {
        self.squarefree.len().saturating_sub(1)
    }
}

/// Yun decomposition of `W(x, 1)` over Q. `w` must be nonzero.
pub fn square_free(w: &WeightEnumerator) -> SquareFreeData {
    let f = RatPoly::from_ints(w.coeffs());
    let parts = yun(&f);
    let factors: Vec<SquareFreeFactor> =
        parts.iter().map(|(g, m)| SquareFreeFactor { poly: g.primitive_integer(), multiplicity: *m }).collect();
    let product = parts.iter().fold(RatPoly::one(), |acc, (g, _)| acc.mul(g));
    SquareFreeData { squarefree: product.primitive_integer(), factors }
}

/// A certified root disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T> {
    pub center: Complex<T>,
    pub radius: T,
    pub multiplicity: usize,
}

/// Pairwise-disjoint certified disks, one per distinct root of `W(x, 1)`,
/// sorted by center (real part, then imaginary part).
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet<T> {
    pub roots: Vec<Root<T>>,
    /// Upper bound on the modulus of every true root.
    pub bound: T,
    /// Largest radius.
    pub eps: T,
}

impl<T: Real> RootSet<T> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn centers(&self) -> Vec<Complex<T>> {
        self.roots.iter().map(|r| r.center).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RootRecord {
    re: f64,
    im: f64,
    radius: f64,
    multiplicity: usize,
}

#[derive(Serialize, Deserialize)]
struct RootSetRecord {
    roots: Vec<RootRecord>,
    eps: f64,
    #[serde(rename = "N")]
    bound: f64,
}

impl<T: Real> Serialize for RootSet<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RootSetRecord {
            roots: self
                .roots
                .iter()
                .map(|r| RootRecord {
                    re: r.center.re.as_f64(),
                    im: r.center.im.as_f64(),
                    radius: r.radius.as_f64(),
                    multiplicity: r.multiplicity,
                })
                .collect(),
            eps: self.eps.as_f64(),
            bound: self.bound.as_f64(),
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for RootSet<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = RootSetRecord::deserialize(d)?;
        let conv = |x: f64| T::from_f64(x).ok_or_else(|| D::Error::custom("non-finite value"));
        let roots = rec
            .roots
            .iter()
            .map(|r| {
                Ok(Root {
                    center: Complex::new(conv(r.re)?, conv(r.im)?),
                    radius: conv(r.radius)?,
                    multiplicity: r.multiplicity,
                })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(RootSet { roots, eps: conv(rec.eps)?, bound: conv(rec.bound)? })
    }
}

/// Classic Cauchy bound `1 + max_i |a_i / a_d|`.
pub fn cauchy_bound(poly: &[BigInt]) -> f64 {
    let lead = poly.last().expect("nonzero polynomial").abs();
    let max = poly[..poly.len() - 1].iter().map(|c| ratio_f64(&c.abs(), &lead)).fold(0.0, f64::max);
    1.0 + max
}

/// Positive root of `|a_d| x^d - sum_{i<d} |a_i| x^i`, also a bound on all
/// root moduli and usually much tighter than [`cauchy_bound`].
fn cauchy_radius(poly: &[BigInt]) -> f64 {
    let d = poly.len() - 1;
    let lead = poly[d].abs();
    let ratios: Vec<f64> = poly[..d].iter().map(|c| ratio_f64(&c.abs(), &lead)).collect();
    if ratios.iter().all(|&r| r == 0.0) {
        return 0.0;
    }
    // g(x) = 1 - sum r_i x^(i-d) is increasing on x > 0
    let g = |x: f64| 1.0 - ratios.iter().enumerate().map(|(i, r)| r * x.powi(i as i32 - d as i32)).sum::<f64>();
    let (mut lo, mut hi) = (0.0f64, cauchy_bound(poly));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    BigRational::new(a.clone(), b.clone()).to_f64().unwrap_or(f64::INFINITY)
}

/// Aberth–Ehrlich iteration on `poly` (exact integer coefficients) in the
/// float type `T`. The variable is scaled by the Cauchy radius so all roots
/// lie in the unit disk; starting points sit on the unit circle at angles
/// `2 pi j / d + 0.4`.
fn aberth<T: Real>(poly: &[BigInt]) -> Vec<Complex<T>> {
    let d = poly.len() - 1;
    if d == 1 {
        let root = -ratio_f64(&poly[0], &poly[1]);
        return vec![Complex::new(T::of(root), T::zero())];
    }
    let scale = cauchy_radius(poly);
    if scale == 0.0 {
        return vec![Complex::new(T::zero(), T::zero()); d];
    }
    // b_i = a_i s^i / (a_d s^d)
    let lead = &poly[d];
    let coeffs: Vec<T> =
        poly.iter().enumerate().map(|(i, c)| T::of(ratio_f64(c, lead) * scale.powi(i as i32 - d as i32))).collect();

    let mut z: Vec<Complex<T>> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
            Complex::new(T::of(theta.cos()), T::of(theta.sin()))
        })
        .collect();
    let tol = T::epsilon() * T::of(4.0);
    for _ in 0..MAX_SWEEPS {
        let mut max_step = T::zero();
        for j in 0..d {
            let (p, dp) = horner_with_derivative(&coeffs, z[j]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<T> = (0..d)
                .filter(|&k| k != j)
                .map(|k| (z[j] - z[k]).inv())
                .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[j] = z[j] - step;
                max_step = max_step.max(step.norm() / (T::one() + z[j].norm()));
            }
        }
        if max_step <= tol {
            break;
        }
    }
    let s = T::of(scale);
    z.into_iter().map(|y| y * s).collect()
}

fn horner_with_derivative<T: Real>(coeffs: &[T], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let zero = Complex::new(T::zero(), T::zero());
    let mut p = zero;
    let mut dp = zero;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + Complex::new(c, T::zero());
    }
    (p, dp)
}

fn exact_of<T: Real>(z: Complex<T>) -> Exact {
    let r = |x: T| BigRational::from_float(x.as_f64()).expect("finite center");
    Complex::new(r(z.re), r(z.im))
}

fn round_exact<T: Real>(z: &Exact) -> Complex<T> {
    Complex::new(T::of(z.re.to_f64().unwrap()), T::of(z.im.to_f64().unwrap()))
}

fn eval_exact(poly: &[BigInt], z: &Exact) -> Exact {
    let mut acc = Complex::new(BigRational::zero(), BigRational::zero());
    for c in poly.iter().rev() {
        acc = acc * z.clone() + Complex::new(BigRational::from_integer(c.clone()), BigRational::zero());
    }
    acc
}

/// Smallest f64 whose square is at least `r2`.
pub(crate) fn sqrt_upper(r2: &BigRational) -> f64 {
    if r2.is_zero() {
        return 0.0;
    }
    let mut s = r2.to_f64().unwrap().sqrt();
    loop {
        let exact = BigRational::from_float(s).unwrap();
        if &(exact.clone() * exact) >= r2 {
            return s;
        }
        s = next_up(s);
    }
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        f64::from_bits(1)
    } else {
        f64::from_bits(x.to_bits() + 1)
    }
}

/// Smallest `T` not below `x`.
fn round_up<T: Real>(x: f64) -> T {
    let mut t = T::of(x);
    while t.as_f64() < x {
        let step = (t.abs() * T::epsilon()).max(T::min_positive_value());
        t = t + step;
    }
    t
}

/// Exact squared radius `d^2 |p(z_j)|^2 / |lc prod_{k != j} (z_j - z_k)|^2`
/// for each approximation; `None` if two approximations coincide.
fn inclusion_radii_sq(poly: &[BigInt], z: &[Exact]) -> Option<Vec<BigRational>> {
    let d = BigRational::from_integer(BigInt::from(z.len()));
    let lead = BigRational::from_integer(poly.last().unwrap().clone());
    let mut out = Vec::with_capacity(z.len());
    for (j, zj) in z.iter().enumerate() {
        let value = eval_exact(poly, zj);
        let num = value.norm_sqr();
        if num.is_zero() {
            out.push(BigRational::zero());
            continue;
        }
        let mut prod = Complex::new(lead.clone(), BigRational::zero());
        for (k, zk) in z.iter().enumerate() {
            if k != j {
                prod *= zj - zk;
            }
        }
        let den = prod.norm_sqr();
        if den.is_zero() {
            return None;
        }
        out.push(&d * &d * num / den);
    }
    Some(out)
}

/// One Weierstrass sweep on `poly` over the approximations at `idx`, in exact
/// arithmetic, rounded back to `T`. Returns whether anything moved.
fn weierstrass_sweep<T: Real>(poly: &[BigInt], z: &mut [Complex<T>], idx: &[usize]) -> Result<bool, RootError> {
    let lead = BigRational::from_integer(poly.last().unwrap().clone());
    let exact: Vec<Exact> = idx.iter().map(|&i| exact_of(z[i])).collect();
    let mut moved = false;
    let mut updated = Vec::with_capacity(idx.len());
    for (j, zj) in exact.iter().enumerate() {
        let value = eval_exact(poly, zj);
        if value.norm_sqr().is_zero() {
            updated.push(z[idx[j]]);
            continue;
        }
        let mut prod = Complex::new(lead.clone(), BigRational::zero());
        for (k, zk) in exact.iter().enumerate() {
            if k != j {
                prod *= zj - zk;
            }
        }
        if prod.norm_sqr().is_zero() {
            return Err(RootError::Coincident);
        }
        let next = round_exact::<T>(&(zj - value / prod));
        moved |= next != z[idx[j]];
        updated.push(next);
    }
    for (j, &i) in idx.iter().enumerate() {
        z[i] = updated[j];
    }
    Ok(moved)
}

struct Certified<T> {
    radii: Vec<T>,
    overlap: Option<(usize, usize)>,
}

/// Radius per approximation: the larger of the inclusion radius for the full
/// square-free part and for the approximation's own factor. Disjoint
/// enlarged disks pin down both the root and its multiplicity.
fn certify<T: Real>(sf: &SquareFreeData, z: &[Complex<T>], owner: &[usize]) -> Result<Certified<T>, RootError> {
    let exact: Vec<Exact> = z.iter().map(|&c| exact_of(c)).collect();
    let mut r2 = inclusion_radii_sq(&sf.squarefree, &exact).ok_or(RootError::Coincident)?;
    for (f, factor) in sf.factors.iter().enumerate() {
        let idx: Vec<usize> = (0..z.len()).filter(|&i| owner[i] == f).collect();
        let sub: Vec<Exact> = idx.iter().map(|&i| exact[i].clone()).collect();
        let own = inclusion_radii_sq(&factor.poly, &sub).ok_or(RootError::Coincident)?;
        for (slot, r) in idx.iter().zip(own) {
            if r > r2[*slot] {
                r2[*slot] = r;
            }
        }
    }
    let radii: Vec<T> = r2.iter().map(|r| round_up::<T>(sqrt_upper(r))).collect();

    let exact_r: Vec<BigRational> = radii.iter().map(|r| BigRational::from_float(r.as_f64()).unwrap()).collect();
    let mut overlap = None;
    'outer: for j in 0..z.len() {
        for k in j + 1..z.len() {
            let gap = (&exact[j] - &exact[k]).norm_sqr();
            let reach = &exact_r[j] + &exact_r[k];
            if gap <= &reach * &reach {
                overlap = Some((j, k));
                break 'outer;
            }
        }
    }
    Ok(Certified { radii, overlap })
}

/// Certified roots of the square-free part with multiplicities, each disk
/// of radius at most `target_eps`.
pub fn find_roots<T: Real>(sf: &SquareFreeData, target_eps: f64) -> Result<RootSet<T>, RootError> {
    if !(target_eps > 0.0) {
        return Err(RootError::BadTarget(target_eps));
    }
    let mut z: Vec<Complex<T>> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (f, factor) in sf.factors.iter().enumerate() {
        for root in aberth::<T>(&factor.poly) {
            z.push(root);
            owner.push(f);
        }
    }
    if z.is_empty() {
        return Ok(RootSet { roots: Vec::new(), bound: T::zero(), eps: T::zero() });
    }
    debug_assert_eq!(z.len(), sf.degree());

    let all: Vec<usize> = (0..z.len()).collect();
    let mut last = None;
    for level in 0..PRECISION_LEVELS {
        if level >= 1 {
            for _ in 0..MAX_SWEEPS {
                if !weierstrass_sweep(&sf.squarefree, &mut z, &all)? {
                    break;
                }
            }
        }
        if level >= 2 {
            for (f, factor) in sf.factors.iter().enumerate() {
                let idx: Vec<usize> = (0..z.len()).filter(|&i| owner[i] == f).collect();
                for _ in 0..MAX_SWEEPS {
                    if !weierstrass_sweep(&factor.poly, &mut z, &idx)? {
                        break;
                    }
                }
            }
        }
        let cert = match certify(sf, &z, &owner) {
            Ok(c) => c,
            Err(RootError::Coincident) if level + 1 < PRECISION_LEVELS => continue,
            Err(e) => return Err(e),
        };
        let worst = cert.radii.iter().fold(T::zero(), |a, &b| a.max(b));
        if cert.overlap.is_none() && worst.as_f64() <= target_eps {
            return Ok(assemble(sf, &z, &owner, cert.radii));
        }
        last = Some((cert.overlap, worst.as_f64()));
    }
    match last {
        Some((Some((j, k)), _)) => Err(RootError::ClusterUnresolved(j, k)),
        Some((None, achieved)) => Err(RootError::PrecisionFailure { achieved, target: target_eps }),
        None => Err(RootError::Coincident),
    }
}

fn assemble<T: Real>(sf: &SquareFreeData, z: &[Complex<T>], owner: &[usize], radii: Vec<T>) -> RootSet<T> {
    let mut roots: Vec<Root<T>> = z
        .iter()
        .zip(owner)
        .zip(radii)
        .map(|((&center, &f), radius)| Root { center, radius, multiplicity: sf.factors[f].multiplicity })
        .collect();
    roots.sort_by(|a, b| {
        a.center.re.partial_cmp(&b.center.re).unwrap().then(a.center.im.partial_cmp(&b.center.im).unwrap())
    });
    let eps = roots.iter().fold(T::zero(), |a, r| a.max(r.radius));
    let bound = roots
        .iter()
        .map(|r| {
            let modulus = sqrt_upper(&exact_of(r.center).norm_sqr());
            round_up::<T>(modulus + r.radius.as_f64()) + T::epsilon() * T::of(modulus)
        })
        .fold(T::zero(), T::max);
    RootSet { roots, bound, eps }
}

/// Exact Vieta residuals of a root set against its square-free part:
/// `|sum z_j + a_{d-1}/a_d|` and `|prod z_j - (-1)^d a_0/a_d|`, together with
/// the admissible tolerances `d * eps` and `d * N^(d-1) * eps`.
#[derive(Clone, Debug)]
pub struct VietaCheck {
    pub sum_residual: f64,
    pub sum_tolerance: f64,
    pub product_residual: f64,
    pub product_tolerance: f64,
}

impl VietaCheck {
    pub fn passes(&self) -> bool {
        self.sum_residual <= self.sum_tolerance && self.product_residual <= self.product_tolerance
    }
}

pub fn vieta_check<T: Real>(sf: &SquareFreeData, roots: &RootSet<T>) -> VietaCheck {
    let poly = &sf.squarefree;
    let d = poly.len() - 1;
    let lead = BigRational::from_integer(poly[d].clone());
    let zero = || Complex::new(BigRational::zero(), BigRational::zero());
    let one = Complex::new(BigRational::one(), BigRational::zero());
    let exact: Vec<Exact> = roots.roots.iter().map(|r| exact_of(r.center)).collect();

    let sum = exact.iter().fold(zero(), |a, z| a + z);
    let expected_sum = -BigRational::from_integer(poly[d - 1].clone()) / &lead;
    let sum_res = (sum - Complex::new(expected_sum, BigRational::zero())).norm_sqr();

    let prod = exact.iter().fold(one, |a, z| a * z);
    let mut expected_prod = BigRational::from_integer(poly[0].clone()) / &lead;
    if d % 2 == 1 {
        expected_prod = -expected_prod;
    }
    let prod_res = (prod - Complex::new(expected_prod, BigRational::zero())).norm_sqr();

    let eps = roots.eps.as_f64();
    let n = roots.bound.as_f64();
    VietaCheck {
        sum_residual: sqrt_upper(&sum_res),
        sum_tolerance: d as f64 * eps,
        product_residual: sqrt_upper(&prod_res),
        product_tolerance: d as f64 * n.powi(d as i32 - 1) * eps,
    }
}
