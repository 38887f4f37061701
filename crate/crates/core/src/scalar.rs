//! Floating-point scalars used by the numeric half of the crate.
//!
//! Everything exact (field arithmetic, enumerators, square-free
//! decomposition, certification of root disks) is done in integers or
//! rationals; root approximation and the Möbius search run over any
//! [`Real`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// f32 or f64, with the tolerances the stabilizer search uses at that width.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Relative coefficient residual below which `A.W = W` is accepted.
    const VERIFY_TOL: f64;
    /// Entrywise distance at which two group elements are identified.
    const DEDUP_TOL: f64;
    /// Relative distance at which a Möbius image is screened as hitting a root.
    const SCREEN_TOL: f64;

    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }
}

impl Real for f64 {
    const VERIFY_TOL: f64 = 1e-8;
    const DEDUP_TOL: f64 = 1e-6;
    const SCREEN_TOL: f64 = 1e-6;
}

impl Real for f32 {
    const VERIFY_TOL: f64 = 1e-3;
    const DEDUP_TOL: f64 = 1e-2;
    const SCREEN_TOL: f64 = 1e-2;
}
