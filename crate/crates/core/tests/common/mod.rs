#![allow(dead_code)]

pub mod dense;

use qana_core::dsl::{Circuit, Instruction};
use qana_core::{GateSpec, MeasurementBasis, Rng};
use rand::Rng as _;

/// Random gate on `n` qubits (controlled gates only when there is room).
pub fn random_gate(n: usize, rng: &mut Rng) -> GateSpec {
    let pick = |rng: &mut Rng, k: usize| -> Vec<usize> {
        let mut qs: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            qs.swap(i, j);
        }
        qs.truncate(k);
        qs
    };
    let max_kind = match n {
        1 => 5,
        2 => 7,
        _ => 8,
    };
    let theta = rng.gen_range(-7.0..7.0);
    match rng.gen_range(0..max_kind) {
        0 => GateSpec::x(pick(rng, 1)[0]),
        1 => GateSpec::y(pick(rng, 1)[0]),
        2 => GateSpec::z(pick(rng, 1)[0]),
        3 => GateSpec::h(pick(rng, 1)[0]),
        4 => GateSpec::phase(theta, pick(rng, 1)[0]),
        5 => {
            let q = pick(rng, 2);
            GateSpec::cphase(theta, q[0], q[1])
        }
        6 => {
            let q = pick(rng, 2);
            GateSpec::cnot(q[0], q[1])
        }
        _ => {
            let q = pick(rng, 3);
            GateSpec::toffoli(q[0], q[1], q[2])
        }
    }
}

/// Random valid program of `len` instructions on 1..=6 qubits.
pub fn random_circuit(seed: u64, len: usize) -> Circuit {
    let mut rng = Rng::seeded(seed);
    let n = rng.gen_range(1..=6);
    let mut c = Circuit::new(n);
    if rng.gen_bool(0.3) {
        c.name = Some(format!("fuzz {seed}"));
    }
    for _ in 0..len {
        match rng.gen_range(0..10) {
            0 => {
                let basis = if rng.gen_bool(0.5) { MeasurementBasis::Z } else { MeasurementBasis::X };
                c.measure(rng.gen_range(0..n), basis);
            }
            1 => {
                c.push(Instruction::Barrier);
            }
            _ => {
                c.push(random_gate(n, &mut rng));
            }
        }
    }
    c
}
