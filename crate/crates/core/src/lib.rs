//! Weight enumerators of linear codes over small finite fields and the
//! stabilizer of the homogeneous enumerator in GL2(C).
//!
//! Exact parts (finite fields, codes, enumerators, the MacWilliams transform,
//! classification, square-free decomposition) use integer and rational
//! arithmetic. The numeric parts (root approximation, the Möbius search) are
//! generic over [`Real`], with the root disks certified exactly.

pub mod catalog;
pub mod code;
pub mod format;
pub mod gf;
pub mod poly;
pub mod rm;
pub mod roots;
pub mod scalar;
pub mod stab;
pub mod wenum;

use thiserror::Error;

pub use code::{CodeError, LinearCode, WeightEnumerator};
pub use format::ParseError;
pub use gf::{FieldElement, FiniteField, GfError};
pub use rm::RmError;
pub use roots::{Root, RootError, RootSet, SquareFreeData};
pub use scalar::Real;
pub use stab::{Mat2, StabError, StabOptions, StabilizerElement, StabilizerReport, Verdict};
pub use wenum::{Classification, WenumError};

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type RootSet64 = RootSet<f64>;
pub type RootSet32 = RootSet<f32>;
pub type StabilizerReport64 = StabilizerReport<f64>;
pub type StabilizerReport32 = StabilizerReport<f32>;
pub type StabilizerElement64 = StabilizerElement<f64>;
pub type StabilizerElement32 = StabilizerElement<f32>;

/// Any error the library reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    ReedMuller(#[from] RmError),
    #[error(transparent)]
    Enumerator(#[from] WenumError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Stabilizer(#[from] StabError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Whether the failure is numerical (precision, unresolved clusters or an
    /// inconclusive certificate) rather than bad input.
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::Roots(_) | Error::Stabilizer(StabError::Root(_) | StabError::Inconclusive { .. }))
    }
}
