//! Built-in fixtures: the irreducible binary codes with enumerator
//! `(x^2 + 1)^(n/2)` up to length 16, the Gleason polynomial, and the
//! Reed–Muller codes whose enumerators have trivial stabilizer.

use crate::code::{LinearCode, WeightEnumerator};
use crate::rm::{projective_reed_muller, reed_muller};
use crate::wenum::{macwilliams, pair_sum_enumerator};
use crate::Error;

/// How a fixture's enumerator is obtained.
#[derive(Clone, Debug)]
pub enum Source {
    /// Enumerate the code.
    Code(LinearCode),
    /// A polynomial given directly.
    Polynomial(WeightEnumerator),
    /// The code is the dual of another entry; its enumerator comes from the
    /// MacWilliams transform of that entry's.
    DualOf { code: LinearCode, primal: &'static str },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub q: u32,
    pub n: usize,
    pub source: Source,
    /// Enumerator the entry is known to have, when stated up front.
    pub expected: Option<WeightEnumerator>,
}

impl CatalogEntry {
    pub fn dimension(&self) -> Option<usize> {
        match &self.source {
            Source::Code(c) | Source::DualOf { code: c, .. } => Some(c.dimension()),
            Source::Polynomial(_) => None,
        }
    }

    pub fn code(&self) -> Option<&LinearCode> {
        match &self.source {
            Source::Code(c) | Source::DualOf { code: c, .. } => Some(c),
            Source::Polynomial(_) => None,
        }
    }

    /// The enumerator, enumerating at most `q^k` codewords of whichever code
    /// is actually walked.
    pub fn enumerator(&self) -> Result<WeightEnumerator, Error> {
        match &self.source {
            Source::Code(c) => Ok(c.enumerate_weights()?),
            Source::Polynomial(w) => Ok(w.clone()),
            Source::DualOf { primal, .. } => {
                let p = find(primal).expect("catalog entries refer to each other by name");
                let w = p.enumerator()?;
                Ok(macwilliams(&w, p.q, &w.total())?)
            }
        }
    }
}

fn with_identity(x: &[[u32; 7]; 7]) -> Vec<Vec<u32>> {
    (0..7)
        .map(|i| {
            let mut row: Vec<u32> = (0..7).map(|j| u32::from(i == j)).collect();
            row.extend_from_slice(&x[i]);
            row
        })
        .collect()
}

const X3: [[u32; 7]; 7] = [
    [1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 1, 1, 1, 1],
    [1, 0, 0, 0, 0, 0, 0],
];

const X4: [[u32; 7]; 7] = [
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 0, 1, 0],
    [1, 1, 1, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1],
];

const X5: [[u32; 7]; 7] = [
    [1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 1, 1, 0, 1, 0, 1],
    [1, 1, 1, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 1, 1],
];

fn binary(rows: Vec<Vec<u32>>) -> LinearCode {
    let n = rows[0].len();
    LinearCode::from_indices(2, n, &rows).expect("catalog generator has full rank")
}

fn pair_sum_code(name: &'static str, description: &'static str, rows: Vec<Vec<u32>>) -> CatalogEntry {
    let code = binary(rows);
    let n = code.length();
    CatalogEntry {
        name,
        description,
        q: 2,
        n,
        source: Source::Code(code),
        expected: Some(pair_sum_enumerator(2, n / 2)),
    }
}

fn rm_entry(name: &'static str, description: &'static str, q: u32, code: LinearCode) -> CatalogEntry {
    CatalogEntry { name, description, q, n: code.length(), source: Source::Code(code), expected: None }
}

/// All entries in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let x2 = vec![vec![1, 0, 0, 1, 1, 1], vec![0, 1, 0, 1, 1, 1], vec![0, 0, 1, 1, 1, 1]];
    let gleason = WeightEnumerator::from_u64s(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
    let prm_5_5_2 = projective_reed_muller(5, 5, 2).expect("fixed parameters");
    vec![
        pair_sum_code("X1", "[2,1,2] binary code <(1,1)>", vec![vec![1, 1]]),
        pair_sum_code("X2", "[6,3,2] formally self-dual binary code", x2),
        pair_sum_code("X3", "[14,7,2] binary code [I|X3]", with_identity(&X3)),
        pair_sum_code("X4", "[14,7,2] binary code [I|X4]", with_identity(&X4)),
        pair_sum_code("X5", "[14,7,2] binary code [I|X5]", with_identity(&X5)),
        CatalogEntry {
            name: "gleason",
            description: "x^8 + 14x^4y^4 + y^8, the extended Hamming enumerator",
            q: 2,
            n: 8,
            source: Source::Polynomial(gleason.clone()),
            expected: Some(gleason),
        },
        rm_entry("RM4(2,2)", "affine Reed-Muller code over GF(4)", 4, reed_muller(4, 2, 2).expect("fixed parameters")),
        rm_entry("RM4(3,2)", "affine Reed-Muller code over GF(4)", 4, reed_muller(4, 3, 2).expect("fixed parameters")),
        rm_entry("RM5(2,2)", "affine Reed-Muller code over GF(5)", 5, reed_muller(5, 2, 2).expect("fixed parameters")),
        rm_entry(
            "PRM5(3,2)",
            "projective Reed-Muller code over GF(5)",
            5,
            projective_reed_muller(5, 3, 2).expect("fixed parameters"),
        ),
        CatalogEntry {
            name: "PRM5(5,2)",
            description: "projective Reed-Muller code over GF(5), dual of PRM5(3,2)",
            q: 5,
            n: prm_5_5_2.length(),
            source: Source::DualOf { code: prm_5_5_2, primal: "PRM5(3,2)" },
            expected: None,
        },
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Names of the entries whose enumerators have trivial stabilizer.
pub const TRIVIAL_TARGETS: [&str; 5] = ["RM4(2,2)", "RM4(3,2)", "RM5(2,2)", "PRM5(3,2)", "PRM5(5,2)"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCheck {
    pub name: &'static str,
    pub expected: WeightEnumerator,
    pub actual: WeightEnumerator,
}

impl CatalogCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Enumerates every code entry with a stated enumerator and compares.
pub fn verify_catalog() -> Result<Vec<CatalogCheck>, Error> {
    catalog()
        .into_iter()
        .filter(|e| matches!(e.source, Source::Code(_)))
        .filter_map(|e| e.expected.clone().map(|expected| (e, expected)))
        .map(|(e, expected)| Ok(CatalogCheck { name: e.name, expected, actual: e.enumerator()? }))
        .collect()
}
