//! Intercept detection with randomly chosen Z/X encodings.
//!
//! The sender encodes a random bit in a random basis. An optional
//! interceptor measures in a basis of its own choosing and forwards the
//! collapsed qubit. The receiver measures in the sender's basis, so any
//! disagreement can only come from the interception: a wrong-basis guess
//! (probability 1/2) flips the check bit half the time, giving a 25%
//! mismatch rate.

use serde::{Deserialize, Serialize};

use super::{invalid, AlgorithmResult};
use crate::gate::GateSpec;
use crate::rng::Rng;
use crate::state::{MeasurementBasis, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub num_check_bits: u64,
    pub intercepted: bool,
    pub mismatch_count: u64,
    pub mismatch_rate: f64,
}

fn random_basis(rng: &mut Rng) -> MeasurementBasis {
    if rng.next_bit() {
        MeasurementBasis::X
    } else {
        MeasurementBasis::Z
    }
}

pub fn eavesdrop_demo(num_qubits: u64, intercept: bool, rng: &mut Rng) -> AlgorithmResult<DetectionReport> {
    if num_qubits == 0 {
        return invalid("need at least one qubit");
    }
    let mut mismatches = 0;
    for _ in 0..num_qubits {
        let bit = rng.next_bit() as u8;
        let basis = random_basis(rng);
        let mut qubit = StateVector::<f64>::new_register(1)?;
        if bit == 1 {
            qubit.apply_gate_in_place(&GateSpec::x(0))?;
        }
        if basis == MeasurementBasis::X {
            qubit.apply_gate_in_place(&GateSpec::h(0))?;
        }
        if intercept {
            let spy_basis = random_basis(rng);
            qubit.measure_in_place(0, spy_basis, rng)?;
        }
        if qubit.measure_in_place(0, basis, rng)? != bit {
            mismatches += 1;
        }
    }
    Ok(DetectionReport {
        num_check_bits: num_qubits,
        intercepted: intercept,
        mismatch_count: mismatches,
        mismatch_rate: mismatches as f64 / num_qubits as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_intercept_is_clean() {
        let r = eavesdrop_demo(2000, false, &mut Rng::seeded(8)).unwrap();
        assert_eq!(r.mismatch_count, 0);
        assert_eq!(r.mismatch_rate, 0.0);
    }

    #[test]
    fn intercept_rate_quarter() {
        let r = eavesdrop_demo(10_000, true, &mut Rng::seeded(8)).unwrap();
        assert!((0.23..=0.27).contains(&r.mismatch_rate), "{}", r.mismatch_rate);
        assert_eq!(r.mismatch_rate, r.mismatch_count as f64 / 10_000.0);
    }

    #[test]
    fn single_qubit() {
        for seed in 0..20 {
            let r = eavesdrop_demo(1, true, &mut Rng::seeded(seed)).unwrap();
            assert!(r.mismatch_count <= 1);
        }
        assert!(eavesdrop_demo(0, true, &mut Rng::seeded(0)).is_err());
    }
}
