//! Arithmetic in small finite fields GF(q), q = p^e.
//!
//! Elements are indexed by integers in `[0, q)`: the index is the
//! coefficient vector of the polynomial-basis representation read in base
//! `p` (constant term is the least significant digit). Index 0 is zero and
//! index 1 is one. Extension fields use the least monic irreducible of
//! degree `e` over GF(p), where polynomials are ordered by the base-`p`
//! integer formed from their non-leading coefficients, so indices are stable
//! across runs.
//!
//! Full `q x q` addition and multiplication tables are built at
//! construction; the codeword enumerator indexes them directly.

use std::fmt;

use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("q = {0} is outside the supported range 2..={MAX_FIELD_SIZE}")]
    Unsupported(u32),
    #[error("element index {value} does not belong to GF({q})")]
    ForeignElement { value: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// An element of some GF(q), stored as its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field with precomputed operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Non-leading coefficients of the monic irreducible, constant term first.
    /// Empty for prime fields.
    irreducible: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("irreducible", &self.irreducible)
            .finish()
    }
}

impl FiniteField {
    /// Builds GF(q). Fails unless `q` is a prime power in `2..=256`.
    pub fn new(q: u32) -> Result<Self, GfError> {
        if !(2..=MAX_FIELD_SIZE).contains(&q) {
            return Err(GfError::Unsupported(q));
        }
        let (p, e) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        let irreducible = if e == 1 { Vec::new() } else { least_irreducible(p, e) };
        let qs = q as usize;

        let digits = |v: u32| -> Vec<u32> {
            let mut out = vec![0; e as usize];
            let mut v = v;
            for d in out.iter_mut() {
                *d = v % p;
                v /= p;
            }
            out
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum) as u8;
                let prod = poly_mul_mod(&da, &db, &irreducible, p);
                mul[(a * q + b) as usize] = undigits(&prod) as u8;
            }
        }

        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).expect("additive inverse") as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("nonzero element is invertible") as u8;
            }
        }

        Ok(FiniteField { p, e, q, irreducible, add, mul, neg, inv })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0, ..., c_{e-1}` of the monic irreducible
    /// `x^e + c_{e-1} x^{e-1} + ... + c_0`; empty for prime fields.
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, GfError> {
        if value < self.q {
            Ok(FieldElement(value as u8))
        } else {
            Err(GfError::ForeignElement { value, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|v| FieldElement(v as u8))
    }

    fn check(&self, a: FieldElement) -> Result<(), GfError> {
        if u32::from(a.0) < self.q {
            Ok(())
        } else {
            Err(GfError::ForeignElement { value: a.0.into(), q: self.q })
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(self.add_raw(a.0, b.0)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(self.add_raw(a.0, self.neg_raw(b.0))))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(self.mul_raw(a.0, b.0)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        Ok(FieldElement(self.neg_raw(a.0)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        Ok(FieldElement(self.inv_raw(a.0)))
    }

    /// `a^k` with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, k: u32) -> Result<FieldElement, GfError> {
        self.check(a)?;
        Ok(FieldElement(self.pow_raw(a.0, k)))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32, GfError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        let mut x = a.0;
        let mut k = 1;
        while x != 1 {
            x = self.mul_raw(x, a.0);
            k += 1;
        }
        Ok(k)
    }

    // Unchecked table lookups for hot loops. Callers guarantee indices < q.

    #[inline]
    pub(crate) fn add_raw(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u8, b: u8) -> u8 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub(crate) fn pow_raw(&self, a: u8, mut k: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            k >>= 1;
        }
        acc
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Product of two residues modulo the monic `x^e + tail`, coefficients mod p.
fn poly_mul_mod(a: &[u32], b: &[u32], tail: &[u32], p: u32) -> Vec<u32> {
    let e = a.len();
    let mut prod = vec![0u32; 2 * e.max(1) - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^e = -tail
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (j, &t) in tail.iter().enumerate() {
            let idx = deg - e + j;
            prod[idx] = (prod[idx] + (p - (c * t) % p)) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// Least monic irreducible of degree `e` over GF(p), in the ordering of the
/// base-`p` integer formed by its non-leading coefficients.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    (0..count)
        .map(|v| {
            let mut tail = vec![0u32; e as usize];
            let mut v = v;
            for c in tail.iter_mut() {
                *c = v % p;
                v /= p;
            }
            tail
        })
        .find(|tail| is_irreducible(tail, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// Trial division of the monic `x^e + tail` by every monic of degree 1..=e/2.
fn is_irreducible(tail: &[u32], p: u32) -> bool {
    let e = tail.len();
    let mut f: Vec<u32> = tail.to_vec();
    f.push(1);
    for d in 1..=e / 2 {
        for v in 0..p.pow(d as u32) {
            let mut g = vec![0u32; d + 1];
            let mut v = v;
            for c in g.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            g[d] = 1;
            if poly_rem_is_zero(&f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (j, &c) in g.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    fn el(f: &FiniteField, v: u32) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn small_field_examples() {
        let f2 = FiniteField::new(2).unwrap();
        assert_eq!(f2.add(el(&f2, 1), el(&f2, 1)).unwrap(), el(&f2, 0));

        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.irreducible(), &[1, 1]);
        let omega = el(&f4, 2);
        assert_eq!(f4.add(omega, FieldElement::ONE).unwrap(), el(&f4, 3));
        assert_eq!(f4.mul(omega, omega).unwrap(), el(&f4, 3));
        assert_eq!(f4.inv(omega).unwrap(), el(&f4, 3));

        let f5 = FiniteField::new(5).unwrap();
        assert_eq!(f5.add(el(&f5, 3), el(&f5, 4)).unwrap(), el(&f5, 2));
        assert_eq!(f5.mul(el(&f5, 2), el(&f5, 3)).unwrap(), el(&f5, 1));
        assert_eq!(f5.inv(el(&f5, 2)).unwrap(), el(&f5, 3));
    }

    #[test]
    fn identities_and_absorption() {
        for q in SUPPORTED {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
            for a in f.elements() {
                assert_eq!(f.mul(a, FieldElement::ZERO).unwrap(), FieldElement::ZERO);
                assert_eq!(f.add(a, FieldElement::ZERO).unwrap(), a);
                assert_eq!(f.mul(a, FieldElement::ONE).unwrap(), a);
            }
        }
    }

    #[test]
    fn errors() {
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.inv(FieldElement::ZERO), Err(GfError::ZeroInverse));
        let f5 = FiniteField::new(5).unwrap();
        let foreign = el(&f5, 4);
        assert!(matches!(f4.add(foreign, FieldElement::ONE), Err(GfError::ForeignElement { value: 4, q: 4 })));
        assert!(f4.element(4).is_err());
        assert_eq!(FiniteField::new(6), Err(GfError::NotPrimePower(6)));
        assert_eq!(FiniteField::new(1), Err(GfError::Unsupported(1)));
        assert_eq!(FiniteField::new(512), Err(GfError::Unsupported(512)));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in SUPPORTED {
            let f = FiniteField::new(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), FieldElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        let ab = f.add(a, b).unwrap();
                        assert_eq!(f.add(ab, c), f.add(a, f.add(b, c).unwrap()));
                        let mab = f.mul(a, b).unwrap();
                        assert_eq!(f.mul(mab, c), f.mul(a, f.mul(b, c).unwrap()));
                        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
                        let rhs = f.add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "distributivity in GF({q})");
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in SUPPORTED {
            let f = FiniteField::new(q).unwrap();
            let generator = f.elements().skip(1).find(|&a| f.multiplicative_order(a).unwrap() == q - 1);
            assert!(generator.is_some(), "GF({q}) has no generator");
        }
    }

    #[test]
    fn irreducibles_have_no_roots() {
        for q in [4u32, 8, 9, 16, 27, 32, 64, 81, 128, 256] {
            let f = FiniteField::new(q).unwrap();
            let p = f.characteristic();
            let tail = f.irreducible();
            assert_eq!(tail.len() as u32, f.degree());
            for x in 0..p {
                let mut acc = 1u32; // leading coefficient
                for &c in tail.iter().rev() {
                    acc = (acc * x + c) % p;
                }
                assert_ne!(acc, 0, "root {x} of irreducible for GF({q})");
            }
        }
    }

    #[test]
    fn gf16_uses_a_genuine_irreducible() {
        // x^4 + x + 1; x^4 + 1 = (x+1)^4 and x^4 + x^2 + 1 = (x^2+x+1)^2 are excluded.
        let f = FiniteField::new(16).unwrap();
        assert_eq!(f.irreducible(), &[1, 1, 0, 0]);
    }
}
