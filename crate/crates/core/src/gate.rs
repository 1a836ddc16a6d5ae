//! Gate descriptions and their unitaries.
//!
//! Every gate here acts as a single-qubit operator on its target, applied
//! only on basis states where all controls are `1`. CNOT and Toffoli are
//! controlled X, ControlledPhase is a controlled Phase.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};
use crate::scalar::Scalar;

/// Gate family, with the rotation angle in radians where one applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", content = "theta", rename_all = "snake_case")]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    Phase(f64),
    ControlledPhase(f64),
    Cnot,
    Toffoli,
}

impl GateKind {
    /// Lower-case mnemonic used by the circuit language.
    pub fn mnemonic(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::Phase(_) => "phase",
            GateKind::ControlledPhase(_) => "cphase",
            GateKind::Cnot => "cnot",
            GateKind::Toffoli => "toffoli",
        }
    }

    pub fn num_controls(&self) -> usize {
        match self {
            GateKind::ControlledPhase(_) | GateKind::Cnot => 1,
            GateKind::Toffoli => 2,
            _ => 0,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Phase(t) | GateKind::ControlledPhase(t) => Some(t),
            _ => None,
        }
    }

    /// The 2×2 operator applied to the target when every control is set.
    pub fn target_operator<T: Scalar>(&self) -> [[Complex<T>; 2]; 2] {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        match *self {
            GateKind::X | GateKind::Cnot | GateKind::Toffoli => [[zero, one], [one, zero]],
            GateKind::Y => [[zero, -i], [i, zero]],
            GateKind::Z => [[one, zero], [zero, -one]],
            GateKind::H => {
                let s = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
                [[s, s], [s, -s]]
            }
            GateKind::Phase(theta) | GateKind::ControlledPhase(theta) => {
                let theta = T::from_f64_lossy(theta);
                [[one, zero], [zero, Complex::from_polar(T::one(), theta)]]
            }
        }
    }

    /// Full `2^(1+c) × 2^(1+c)` matrix in the gate's local basis: the target
    /// is bit 0 and control `k` is bit `k + 1`.
    pub fn matrix<T: Scalar>(&self) -> Vec<Vec<Complex<T>>> {
        let controls = self.num_controls();
        let dim = 1usize << (controls + 1);
        let ctrl_mask = (dim - 1) & !1;
        let op = self.target_operator::<T>();
        let mut m = vec![vec![Complex::new(T::zero(), T::zero()); dim]; dim];
        for (row, line) in m.iter_mut().enumerate() {
            for (col, entry) in line.iter_mut().enumerate() {
                if row & ctrl_mask != col & ctrl_mask {
                    continue;
                }
                *entry = if row & ctrl_mask == ctrl_mask {
                    op[row & 1][col & 1]
                } else if row == col {
                    Complex::new(T::one(), T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                };
            }
        }
        m
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.angle() {
            Some(t) => write!(f, "{}({t})", self.mnemonic()),
            None => f.write_str(self.mnemonic()),
        }
    }
}

/// A gate bound to concrete qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

impl GateSpec {
    fn single(kind: GateKind, target: usize) -> Self {
        Self {
            kind,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn x(q: usize) -> Self {
        Self::single(GateKind::X, q)
    }

    pub fn y(q: usize) -> Self {
        Self::single(GateKind::Y, q)
    }

    pub fn z(q: usize) -> Self {
        Self::single(GateKind::Z, q)
    }

    pub fn h(q: usize) -> Self {
        Self::single(GateKind::H, q)
    }

    pub fn phase(theta: f64, q: usize) -> Self {
        Self::single(GateKind::Phase(theta), q)
    }

    pub fn cphase(theta: f64, control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::ControlledPhase(theta),
            targets: vec![target],
            controls: vec![control],
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::Cnot,
            targets: vec![target],
            controls: vec![control],
        }
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Self {
            kind: GateKind::Toffoli,
            targets: vec![target],
            controls: vec![c1, c2],
        }
    }

    /// Qubits touched, controls first then the target.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().chain(self.targets.iter()).copied()
    }

    /// Checks arity, range and distinctness against a register size.
    pub fn check(&self, num_qubits: usize) -> SimResult<()> {
        if self.targets.len() != 1 || self.controls.len() != self.kind.num_controls() {
            return Err(SimError::Arity {
                gate: self.kind.mnemonic(),
                targets: 1,
                controls: self.kind.num_controls(),
            });
        }
        let qubits: Vec<usize> = self.qubits().collect();
        for (i, &q) in qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(SimError::IndexOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(SimError::DuplicateIndex(q));
            }
        }
        Ok(())
    }
}
