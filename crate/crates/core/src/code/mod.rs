//! Linear codes given by generator matrices.

mod enumerate;
pub(crate) mod linalg;
mod weight;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::gf::{FieldElement, FiniteField, GfError};

pub use weight::WeightEnumerator;

/// Default cap on the number of codewords `enumerate_weights` will visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("codes over GF({0}) and GF({1}) cannot be combined")]
    FieldMismatch(u32, u32),
    #[error("generator row {row} has length {len}, expected {n}")]
    RaggedRow { row: usize, len: usize, n: usize },
    #[error("generator rows are dependent: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("enumeration too large: q^k = {q}^{k} = {size} codewords exceeds budget {budget}")]
    EnumerationTooLarge { q: u32, k: usize, size: BigInt, budget: u128 },
    #[error("not a code enumerator: {0}")]
    BadEnumerator(String),
    #[error("classification: {0}")]
    Classification(String),
    #[error("binary codes with enumerator (x^2+1)^(n/2) have no known structure theorem")]
    UnsupportedBinary,
}

/// A linear code over GF(q) with a full-rank `k x n` generator matrix, kept
/// exactly as supplied.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<FiniteField>,
    n: usize,
    generator: Vec<Vec<u8>>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.n == other.n && self.generator == other.generator
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Validates symbols and row rank.
    pub fn new(field: Arc<FiniteField>, n: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self, CodeError> {
        let raw = rows.into_iter().map(|r| r.into_iter().map(FieldElement::value).collect()).collect();
        Self::from_raw(field, n, raw)
    }

    /// Same as [`LinearCode::new`] with rows given as element indices.
    pub fn from_indices(q: u32, n: usize, rows: &[Vec<u32>]) -> Result<Self, CodeError> {
        let field = Arc::new(FiniteField::new(q)?);
        let raw = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.element(v).map(FieldElement::value)).collect::<Result<Vec<u8>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_raw(field, n, raw)
    }

    pub(crate) fn from_raw(field: Arc<FiniteField>, n: usize, rows: Vec<Vec<u8>>) -> Result<Self, CodeError> {
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(CodeError::RaggedRow { row, len: r.len(), n });
            }
            if let Some(&bad) = r.iter().find(|&&v| u32::from(v) >= field.order()) {
                return Err(GfError::ForeignElement { value: bad.into(), q: field.order() }.into());
            }
        }
        let rank = linalg::rank(&field, &rows);
        if rank < rows.len() {
            return Err(CodeError::RankDeficient { rank, rows: rows.len() });
        }
        Ok(LinearCode { field, n, generator: rows })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(field: Arc<FiniteField>, n: usize) -> Self {
        LinearCode { field, n, generator: Vec::new() }
    }

    /// All of `GF(q)^n`.
    pub fn full_space(field: Arc<FiniteField>, n: usize) -> Self {
        let generator = (0..n)
            .map(|i| {
                let mut r = vec![0u8; n];
                r[i] = 1;
                r
            })
            .collect();
        LinearCode { field, n, generator }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    /// Generator rows as element indices.
    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    /// `q^k`.
    pub fn size(&self) -> BigInt {
        BigInt::from(self.field.order()).pow(self.dimension() as u32)
    }

    /// `message * G`.
    pub fn encode(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len(), self.dimension(), "message length must equal k");
        let f = &self.field;
        let mut word = vec![0u8; self.n];
        for (m, row) in message.iter().zip(&self.generator) {
            for (w, &g) in word.iter_mut().zip(row) {
                *w = f.add_raw(*w, f.mul_raw(m.value(), g));
            }
        }
        word.into_iter().map(|v| self.field.element(v.into()).unwrap()).collect()
    }

    /// Image under the monomial map sending coordinate `i` to `perm[i]` and
    /// scaling it by `scales[i]` (nonzero).
    pub fn monomial_transform(&self, perm: &[usize], scales: &[FieldElement]) -> Result<Self, CodeError> {
        assert_eq!(perm.len(), self.n);
        assert_eq!(scales.len(), self.n);
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "perm must be a permutation");
            seen[p] = true;
        }
        for &s in scales {
            if s.is_zero() {
                return Err(CodeError::BadEnumerator("monomial scale must be nonzero".into()));
            }
            self.field.element(s.value().into())?;
        }
        let rows = self
            .generator
            .iter()
            .map(|row| {
                let mut out = vec![0u8; self.n];
                for i in 0..self.n {
                    out[perm[i]] = self.field.mul_raw(row[i], scales[i].value());
                }
                out
            })
            .collect();
        Ok(LinearCode { field: self.field.clone(), n: self.n, generator: rows })
    }

    /// Weight enumerator by full enumeration in Gray order, refusing codes with
    /// more than [`DEFAULT_ENUMERATION_BUDGET`] codewords.
    pub fn enumerate_weights(&self) -> Result<WeightEnumerator, CodeError> {
        self.enumerate_weights_with_budget(DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn enumerate_weights_with_budget(&self, budget: u128) -> Result<WeightEnumerator, CodeError> {
        self.check_budget(budget)?;
        let hist = enumerate::weight_histogram(self);
        let n = self.n;
        let coeffs = (0..=n).map(|i| BigInt::from(hist[n - i])).collect();
        Ok(WeightEnumerator::from_coeffs_unchecked(coeffs))
    }

    fn check_budget(&self, budget: u128) -> Result<(), CodeError> {
        let size = self.size();
        if size > BigInt::from(budget) {
            return Err(CodeError::EnumerationTooLarge { q: self.field.order(), k: self.dimension(), size, budget });
        }
        Ok(())
    }

    /// Visits every codeword (as element indices) together with its weight.
    pub fn for_each_codeword<F: FnMut(&[u8], usize)>(&self, budget: u128, visit: F) -> Result<(), CodeError> {
        self.check_budget(budget)?;
        enumerate::for_each_codeword(self, visit);
        Ok(())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        if self.field.order() != other.field.order() {
            return Err(CodeError::FieldMismatch(self.field.order(), other.field.order()));
        }
        let n = self.n + other.n;
        let mut rows = Vec::with_capacity(self.dimension() + other.dimension());
        for r in &self.generator {
            let mut row = r.clone();
            row.resize(n, 0);
            rows.push(row);
        }
        for r in &other.generator {
            let mut row = vec![0u8; self.n];
            row.extend_from_slice(r);
            rows.push(row);
        }
        Ok(LinearCode { field: self.field.clone(), n, generator: rows })
    }

    /// Dual code under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let rows = linalg::nullspace(&self.field, &self.generator, self.n);
        LinearCode { field: self.field.clone(), n: self.n, generator: rows }
    }

    /// Whether both generators span the same subspace.
    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        if self.field.order() != other.field.order() || self.n != other.n || self.dimension() != other.dimension() {
            return false;
        }
        let mut stacked = self.generator.clone();
        stacked.extend(other.generator.iter().cloned());
        linalg::rank(&self.field, &stacked) == self.dimension()
    }

    /// Whether every row of `self` is orthogonal to every row of `other`.
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> bool {
        self.generator.iter().all(|a| other.generator.iter().all(|b| linalg::dot(&self.field, a, b) == 0))
    }

    /// Whether the row space of `self` lies inside that of `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        let mut stacked = other.generator.clone();
        stacked.extend(self.generator.iter().cloned());
        linalg::rank(&self.field, &stacked) == other.dimension()
    }

    /// For a non-binary code with enumerator `(x^2 + (q-1))^(n/2)`, returns
    /// `n/2` disjoint coordinate pairs (0-based, sorted) each supporting a
    /// weight-2 codeword, such that those codewords generate the code: a
    /// witness that the code is monomially equivalent to a direct sum of
    /// copies of `<(1,1)>`.
    pub fn decompose_case_c(&self) -> Result<Vec<(usize, usize)>, CodeError> {
        let q = self.field.order();
        if q == 2 {
            return Err(CodeError::UnsupportedBinary);
        }
        let n = self.n;
        let w = self.enumerate_weights()?;
        if !n.is_multiple_of(2) || w != crate::wenum::pair_sum_enumerator(q, n / 2) {
            return Err(CodeError::Classification(format!("enumerator {w} is not (x^2 + {})^(n/2)", q - 1)));
        }

        let mut by_support: BTreeMap<(usize, usize), Vec<u8>> = BTreeMap::new();
        enumerate::for_each_codeword(self, |word, weight| {
            if weight == 2 {
                let mut support = word.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i);
                let i = support.next().unwrap();
                let j = support.next().unwrap();
                by_support.entry((i, j)).or_insert_with(|| word.to_vec());
            }
        });

        let pairs: Vec<(usize, usize)> = by_support.keys().copied().collect();
        let mut used = vec![false; n];
        for &(i, j) in &pairs {
            if used[i] || used[j] {
                return Err(CodeError::Classification(format!("weight-2 supports overlap at pair ({i}, {j})")));
            }
            used[i] = true;
            used[j] = true;
        }
        if pairs.len() != n / 2 {
            return Err(CodeError::Classification(format!(
                "found {} weight-2 supports, expected {}",
                pairs.len(),
                n / 2
            )));
        }
        let reps: Vec<Vec<u8>> = by_support.into_values().collect();
        if linalg::rank(&self.field, &reps) != self.dimension() {
            return Err(CodeError::Classification("weight-2 codewords do not generate the code".into()));
        }
        Ok(pairs)
    }
}
