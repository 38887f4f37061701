use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CodeError;

/// Weight enumerator `W(x, y) = sum_i a_i x^i y^(n-i)`, where `a_i` counts
/// codewords of weight `n - i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    coeffs: Vec<BigInt>,
}

impl WeightEnumerator {
    /// `coeffs = [a_0, ..., a_n]`. Coefficients must be nonnegative and
    /// there must be at least one.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, CodeError> {
        if coeffs.is_empty() {
            return Err(CodeError::BadEnumerator("empty coefficient list".into()));
        }
        if let Some(i) = coeffs.iter().position(Signed::is_negative) {
            return Err(CodeError::BadEnumerator(format!("coefficient a_{i} is negative")));
        }
        Ok(WeightEnumerator { coeffs })
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        WeightEnumerator { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// `x^n`, the enumerator of the zero code of length `n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        WeightEnumerator { coeffs }
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<BigInt>) -> Self {
        WeightEnumerator { coeffs }
    }

    /// Homogeneous degree, the code length.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Number of codewords of the given weight.
    pub fn count_of_weight(&self, weight: usize) -> &BigInt {
        &self.coeffs[self.n() - weight]
    }

    /// `W(1, 1)`, the number of codewords.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `a_n = 1`: exactly one codeword of weight zero.
    pub fn has_unit_leading(&self) -> bool {
        self.coeffs[self.n()].is_one()
    }

    /// Enumerator of a direct sum.
    pub fn product(&self, other: &WeightEnumerator) -> WeightEnumerator {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        WeightEnumerator { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> WeightEnumerator {
        (0..k).fold(WeightEnumerator::monomial(0), |acc, _| acc.product(self))
    }

    /// Homogeneous rendering, e.g. `x^8 + 14x^4y^4 + y^8`.
    pub fn to_homogeneous_string(&self) -> String {
        let n = self.n();
        let terms: Vec<String> = (0..=n)
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| {
                let mono = format!("{}{}", power("x", i), power("y", n - i));
                term(&self.coeffs[i], &mono)
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// One-variable rendering `W(x, 1)`.
    pub fn to_univariate_string(&self) -> String {
        let terms: Vec<String> = (0..=self.n())
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| term(&self.coeffs[i], &power("x", i)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn term(c: &BigInt, mono: &str) -> String {
    match (c.is_one(), mono.is_empty()) {
        (_, true) => c.to_string(),
        (true, false) => mono.to_string(),
        (false, false) => format!("{c}{mono}"),
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_homogeneous_string())
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    coeffs: Vec<String>,
}

impl Serialize for WeightEnumerator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Record { n: self.n(), coeffs: self.coeffs.iter().map(ToString::to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightEnumerator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = Record::deserialize(d)?;
        if rec.coeffs.len() != rec.n + 1 {
            return Err(D::Error::custom(format!("n = {} but {} coefficients", rec.n, rec.coeffs.len())));
        }
        let coeffs = rec
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        WeightEnumerator::new(coeffs).map_err(D::Error::custom)
    }
}
