//! Real scalar types the simulator can run on.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type backing amplitude components: `f32` or `f64`.
///
/// The tolerances are what the simulator uses when it has to decide a
/// yes/no question from floating point data (entanglement, normalization
/// of user-supplied amplitudes).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Purity below `1 - purity_tolerance()` counts as mixed.
    fn purity_tolerance() -> Self;

    /// Allowed deviation of Σ|amp|² from one for externally supplied states.
    fn norm_tolerance() -> Self;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::nan)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn purity_tolerance() -> Self {
        1e-9
    }

    fn norm_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn purity_tolerance() -> Self {
        1e-5
    }

    fn norm_tolerance() -> Self {
        1e-5
    }
}
