//! Quantum Fourier transform built from Hadamard and controlled-phase
//! gates, plus the period-finding demonstration used in lessons.
//!
//! For `qubits = [q0, q1, …, q(m-1)]` the register value is
//! `x = Σ bit(q_k)·2^k` and the transform is `|x⟩ → M^{-1/2} Σ_y ω^{xy} |y⟩`
//! with `ω = e^{2πi/M}`, `M = 2^m`.

use num_complex::Complex;

use super::{invalid, AlgorithmResult};
use crate::dsl::{Circuit, Instruction};
use crate::gate::GateSpec;
use crate::scalar::Scalar;
use crate::state::{StateVector, MAX_QUBITS};

/// Gate sequence for the transform on `qubits`, or its inverse.
pub fn qft_circuit(num_qubits: usize, qubits: &[usize], inverse: bool) -> AlgorithmResult<Circuit> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= num_qubits {
            return invalid(format!("qubit {q} outside a {num_qubits}-qubit register"));
        }
        if qubits[..i].contains(&q) {
            return invalid(format!("qubit {q} listed twice"));
        }
    }
    let m = qubits.len();
    let mut gates = Vec::new();
    for j in (0..m).rev() {
        gates.push(GateSpec::h(qubits[j]));
        for k in (0..j).rev() {
            let theta = std::f64::consts::TAU / (1u64 << (j - k + 1)) as f64;
            gates.push(GateSpec::cphase(theta, qubits[k], qubits[j]));
        }
    }
    for i in 0..m / 2 {
        let (a, b) = (qubits[i], qubits[m - 1 - i]);
        gates.extend([GateSpec::cnot(a, b), GateSpec::cnot(b, a), GateSpec::cnot(a, b)]);
    }
    if inverse {
        gates.reverse();
        for g in gates.iter_mut() {
            if let crate::GateKind::ControlledPhase(t) = g.kind {
                g.kind = crate::GateKind::ControlledPhase(-t);
            }
        }
    }
    let mut circuit = Circuit::new(num_qubits).with_name(if inverse { "inverse qft" } else { "qft" });
    circuit.instructions = gates.into_iter().map(Instruction::from).collect();
    Ok(circuit)
}

fn apply_all<T: Scalar>(state: &StateVector<T>, circuit: &Circuit) -> AlgorithmResult<StateVector<T>> {
    let mut out = state.clone();
    for instr in &circuit.instructions {
        if let Some(g) = instr.gate() {
            out.apply_gate_in_place(g)?;
        }
    }
    Ok(out)
}

pub fn qft<T: Scalar>(state: &StateVector<T>, qubits: &[usize]) -> AlgorithmResult<StateVector<T>> {
    apply_all(state, &qft_circuit(state.num_qubits(), qubits, false)?)
}

pub fn inverse_qft<T: Scalar>(state: &StateVector<T>, qubits: &[usize]) -> AlgorithmResult<StateVector<T>> {
    apply_all(state, &qft_circuit(state.num_qubits(), qubits, true)?)
}

/// Prepares the uniform superposition over multiples of `period` on `n`
/// qubits, transforms it, and returns the outcome probabilities. The
/// support lands on multiples of `2^n / period`.
pub fn qft_period_demo(n: usize, period: u64) -> AlgorithmResult<Vec<f64>> {
    if n == 0 || n > MAX_QUBITS {
        return invalid(format!("register size {n} outside 1..={MAX_QUBITS}"));
    }
    let dim = 1u64 << n;
    if period == 0 || !period.is_power_of_two() || period > dim {
        return invalid(format!("period {period} does not divide 2^{n}"));
    }
    let count = dim / period;
    let amp = 1.0 / (count as f64).sqrt();
    let amps = (0..dim)
        .map(|i| {
            if i % period == 0 {
                Complex::new(amp, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .collect();
    let state = StateVector::<f64>::from_amplitudes(amps)?;
    let all: Vec<usize> = (0..n).collect();
    Ok(qft(&state, &all)?.probabilities())
}
