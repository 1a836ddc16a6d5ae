//! Teaching-scale quantum circuit simulation.
//!
//! The simulator core is generic over the real scalar type (`f32` or
//! `f64`); the aliases below fix the common choices. Qubit 0 is the least
//! significant bit of a basis index everywhere in this crate.

pub mod algorithms;
pub mod dsl;
pub mod error;
pub mod gate;
pub mod rng;
pub mod scalar;
pub mod state;

pub use error::{SimError, SimResult};
pub use gate::{GateKind, GateSpec};
pub use rng::{Rng, RNG_ALGORITHM};
pub use scalar::Scalar;
pub use state::{BlochVector, MeasurementBasis, StateVector, MAX_QUBITS};

/// Complex amplitude.
pub type ComplexAmp<T> = num_complex::Complex<T>;

/// Double-precision register, the default for everything user facing.
pub type StateVector64 = StateVector<f64>;
/// Single-precision register, half the memory per amplitude.
pub type StateVector32 = StateVector<f32>;
pub type BlochVector64 = BlochVector<f64>;
