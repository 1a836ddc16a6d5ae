use serde::Serialize;
use thiserror::Error;

use super::validate::{validate, Violation};
use super::Circuit;
use crate::error::SimError;
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::state::{MeasurementBasis, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub instruction_index: usize,
    pub qubit: usize,
    pub basis: MeasurementBasis,
    pub outcome: u8,
}

#[derive(Debug, Clone)]
pub struct RunResult<T: Scalar> {
    pub final_state: StateVector<T>,
    /// In program order.
    pub measurements: Vec<MeasurementRecord>,
    /// State after each instruction, present in trace mode.
    pub per_step_states: Option<Vec<StateVector<T>>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("circuit failed validation: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Runs a circuit from `|0…0⟩`.
pub fn run<T: Scalar>(circuit: &Circuit, rng: &mut Rng, trace: bool) -> Result<RunResult<T>, RunError> {
    validate(circuit).map_err(RunError::Invalid)?;
    let start = StateVector::new_register(circuit.num_qubits)?;
    run_on(circuit, start, rng, trace)
}

/// Runs a validated circuit from a given starting state.
pub fn run_on<T: Scalar>(
    circuit: &Circuit,
    mut state: StateVector<T>,
    rng: &mut Rng,
    trace: bool,
) -> Result<RunResult<T>, RunError> {
    if state.num_qubits() != circuit.num_qubits {
        return Err(SimError::DimensionMismatch(state.num_qubits(), circuit.num_qubits).into());
    }
    let mut measurements = Vec::new();
    let mut steps = trace.then(|| Vec::with_capacity(circuit.instructions.len()));
    for (i, instr) in circuit.instructions.iter().enumerate() {
        if let Some(outcome) = instr.apply(&mut state, rng)? {
            if let super::Instruction::Measure { qubit, basis } = *instr {
                measurements.push(MeasurementRecord {
                    instruction_index: i,
                    qubit,
                    basis,
                    outcome,
                });
            }
        }
        if let Some(steps) = steps.as_mut() {
            steps.push(state.clone());
        }
    }
    Ok(RunResult {
        final_state: state,
        measurements,
        per_step_states: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn bell_measurements_agree() {
        let c = parse("qubits 2\nh 0\ncnot 0 1\nmeasure 0 z\nmeasure 1 z").unwrap();
        for seed in 0..200 {
            let r = run::<f64>(&c, &mut Rng::seeded(seed), false).unwrap();
            assert_eq!(r.measurements.len(), 2);
            assert_eq!(r.measurements[0].outcome, r.measurements[1].outcome);
            assert_eq!(r.measurements[1].instruction_index, 3);
        }
    }

    #[test]
    fn double_hadamard_returns_home() {
        let c = parse("qubits 1\nh 0\nh 0").unwrap();
        let r = run::<f64>(&c, &mut Rng::seeded(0), false).unwrap();
        let zero = StateVector::new_register(1).unwrap();
        assert!((r.final_state.fidelity(&zero).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_program_is_identity() {
        let c = Circuit::new(3);
        let r = run::<f64>(&c, &mut Rng::seeded(0), true).unwrap();
        assert_eq!(r.final_state, StateVector::new_register(3).unwrap());
        assert_eq!(r.per_step_states.unwrap().len(), 0);
    }

    #[test]
    fn trace_has_one_state_per_instruction() {
        let c = parse("qubits 2\nh 0\nbarrier\ncnot 0 1\nmeasure 1 x").unwrap();
        let r = run::<f64>(&c, &mut Rng::seeded(5), true).unwrap();
        let steps = r.per_step_states.unwrap();
        assert_eq!(steps.len(), 4);
        for s in &steps {
            assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        }
        assert_eq!(steps[0], steps[1]);
    }

    #[test]
    fn invalid_circuit_rejected() {
        let c = parse("qubits 1\nh 4").unwrap();
        assert!(matches!(
            run::<f64>(&c, &mut Rng::seeded(0), false),
            Err(RunError::Invalid(_))
        ));
    }
}
