//! Brute-force oracle: full 2^n × 2^n matrices built from Kronecker
//! products of textbook 2×2 matrices. Shares no code with the simulator
//! kernel; gate matrices are written out here from their definitions.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use qana_core::{GateKind, GateSpec};

pub type Matrix = Vec<Vec<C>>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn matvec(m: &Matrix, v: &[C]) -> Vec<C> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn pauli_x() -> Matrix {
    vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]
}

fn single_qubit(kind: GateKind) -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::X | GateKind::Cnot | GateKind::Toffoli => pauli_x(),
        GateKind::Y => vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]],
        GateKind::Z => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
        GateKind::H => vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]],
        GateKind::Phase(t) | GateKind::ControlledPhase(t) => vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(t.cos(), t.sin())],
        ],
    }
}

/// Operator on an n-qubit register where qubit 0 is the rightmost Kronecker
/// factor (least-significant index bit).
fn embed(num_qubits: usize, factors: &dyn Fn(usize) -> Matrix) -> Matrix {
    let mut m = factors(num_qubits - 1);
    for q in (0..num_qubits - 1).rev() {
        m = kron(&m, &factors(q));
    }
    m
}

/// `I + (Π_c |1⟩⟨1|_c) ⊗ (U_t − I)`.
pub fn gate_matrix(num_qubits: usize, gate: &GateSpec) -> Matrix {
    let u = single_qubit(gate.kind);
    let u_minus_i = add(&u, &identity(2).iter().map(|r| r.iter().map(|x| -x).collect()).collect());
    let proj1: Matrix = vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]];
    let target = gate.targets[0];
    let controls = gate.controls.clone();
    let delta = embed(num_qubits, &|q| {
        if q == target {
            u_minus_i.clone()
        } else if controls.contains(&q) {
            proj1.clone()
        } else {
            identity(2)
        }
    });
    add(&identity(1 << num_qubits), &delta)
}

pub fn circuit_matrix(num_qubits: usize, gates: &[GateSpec]) -> Matrix {
    gates
        .iter()
        .fold(identity(1 << num_qubits), |acc, g| matmul(&gate_matrix(num_qubits, g), &acc))
}

/// DFT matrix `F_{jk} = ω^{jk} / √M`.
pub fn dft_matrix(dim: usize) -> Matrix {
    let norm = 1.0 / (dim as f64).sqrt();
    (0..dim)
        .map(|j| {
            (0..dim)
                .map(|k| {
                    let angle = std::f64::consts::TAU * ((j * k) % dim) as f64 / dim as f64;
                    c(angle.cos() * norm, angle.sin() * norm)
                })
                .collect()
        })
        .collect()
}

pub fn zero_state(num_qubits: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 1 << num_qubits];
    v[0] = c(1.0, 0.0);
    v
}
