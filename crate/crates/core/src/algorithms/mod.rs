//! Showcase quantum algorithms and the classical baselines they are
//! compared against.

pub mod classical;
pub mod compare;
pub mod eavesdrop;
pub mod grover;
pub mod qft;
pub mod shor;

use thiserror::Error;

use crate::error::SimError;

pub use classical::{linear_search, linear_search_in_order, trial_division, SearchOutcome, TrialDivision};
pub use compare::{compare_factor, compare_search, ComparisonReport, Problem};
pub use eavesdrop::{eavesdrop_demo, DetectionReport};
pub use grover::{grover_search, grover_search_with, optimal_grover_iterations, GroverOptions, GroverReport};
pub use qft::{inverse_qft, qft, qft_circuit, qft_period_demo};
pub use shor::{
    continued_fraction_order, order_find_bruteforce, order_find_quantum, shor_attempt, shor_factor,
    shor_factor_with_cap, FactorReport, ShorAttempt, ShorMode, DEFAULT_ATTEMPT_CAP,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgorithmError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

pub type AlgorithmResult<T> = Result<T, AlgorithmError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> AlgorithmResult<T> {
    Err(AlgorithmError::InvalidArgument(msg.into()))
}

/// Smallest `s` with `s * s >= n`.
pub(crate) fn ceil_sqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt().ceil() as u64;
    while s.saturating_mul(s) < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_helpers() {
        assert_eq!(ceil_sqrt(1000), 32);
        assert_eq!(ceil_sqrt(1024), 32);
        assert_eq!(ceil_sqrt(1025), 33);
        assert_eq!(ceil_sqrt(4), 2);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(gcd(48, 15), 3);
        assert_eq!(gcd(50, 15), 5);
        assert_eq!(mod_pow(7, 4, 15), 1);
        assert_eq!(mod_pow(2, 6, 21), 1);
        assert_eq!(mod_pow(5, 0, 1), 0);
    }
}
