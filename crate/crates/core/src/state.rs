//! Dense statevector of an n-qubit register.
//!
//! Qubit `q` is bit `q` of the basis index, so qubit 0 is the least
//! significant bit: in a 2-qubit register `|01⟩` written as an index is 1
//! and means qubit 0 is set.
//!
//! Bloch coordinates use the usual axes: `|0⟩` is +z, `|1⟩` is −z, `|+⟩` is
//! +x and `|i⟩ = (|0⟩ + i|1⟩)/√2` is +y.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};
use crate::gate::GateSpec;
use crate::rng::Rng;
use crate::scalar::Scalar;

/// Largest register the simulator will allocate (2^20 amplitudes).
pub const MAX_QUBITS: usize = 20;

/// Measurement basis. Outcome 0 is `|0⟩` (Z) or `|+⟩` (X).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasurementBasis {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "x")]
    X,
}

impl MeasurementBasis {
    pub fn mnemonic(self) -> &'static str {
        match self {
            MeasurementBasis::Z => "z",
            MeasurementBasis::X => "x",
        }
    }

    /// Ket label for an outcome bit.
    pub fn outcome_label(self, outcome: u8) -> &'static str {
        match (self, outcome) {
            (MeasurementBasis::Z, 0) => "|0⟩",
            (MeasurementBasis::Z, _) => "|1⟩",
            (MeasurementBasis::X, 0) => "|+⟩",
            (MeasurementBasis::X, _) => "|−⟩",
        }
    }
}

/// Point in (or on) the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> BlochVector<T> {
    pub fn length(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Scalar> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn new_register(num_qubits: usize) -> SimResult<Self> {
        Self::basis_state(num_qubits, 0)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(num_qubits: usize, index: usize) -> SimResult<Self> {
        check_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(SimError::InvalidAmplitudes(format!(
                "basis index {index} outside 0..{dim}"
            )));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits, amps })
    }

    /// Wraps caller-supplied amplitudes. The length must be a power of two
    /// and the vector normalized within `T::norm_tolerance()`; it is not
    /// renormalized.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> SimResult<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::InvalidAmplitudes(format!(
                "length {len} is not a power of two ≥ 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_size(num_qubits)?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(SimError::InvalidAmplitudes("non-finite amplitude".into()));
        }
        let state = Self { num_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - T::one()).abs() > T::norm_tolerance() {
            return Err(SimError::InvalidAmplitudes(format!(
                "squared norm {norm} is not 1"
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    fn check_qubit(&self, qubit: usize) -> SimResult<()> {
        if qubit >= self.num_qubits {
            return Err(SimError::IndexOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Returns a new state with `gate` applied.
    pub fn apply_gate(&self, gate: &GateSpec) -> SimResult<Self> {
        let mut next = self.clone();
        next.apply_gate_in_place(gate)?;
        Ok(next)
    }

    pub fn apply_gate_in_place(&mut self, gate: &GateSpec) -> SimResult<()> {
        gate.check(self.num_qubits)?;
        let ctrl_mask = gate.controls.iter().fold(0usize, |m, &c| m | (1 << c));
        let op = gate.kind.target_operator::<T>();
        self.apply_controlled(gate.targets[0], ctrl_mask, &op);
        Ok(())
    }

    fn apply_controlled(&mut self, target: usize, ctrl_mask: usize, op: &[[Complex<T>; 2]; 2]) {
        let t_mask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & t_mask != 0 || i & ctrl_mask != ctrl_mask {
                continue;
            }
            let j = i | t_mask;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = op[0][0] * a0 + op[0][1] * a1;
            self.amps[j] = op[1][0] * a0 + op[1][1] * a1;
        }
    }

    /// Applies a bijection of basis indices: the amplitude at `i` moves to
    /// `perm(i)`. Fails if `perm` is not a permutation of `0..dim`.
    pub fn apply_permutation(&mut self, perm: impl Fn(usize) -> usize) -> SimResult<()> {
        let dim = self.amps.len();
        let mut next = vec![Complex::new(T::zero(), T::zero()); dim];
        let mut hit = vec![false; dim];
        for (i, &a) in self.amps.iter().enumerate() {
            let j = perm(i);
            if j >= dim || hit[j] {
                return Err(SimError::Precondition(format!(
                    "index map is not a permutation (collision at {j})"
                )));
            }
            hit[j] = true;
            next[j] = a;
        }
        self.amps = next;
        Ok(())
    }

    /// `|amp_i|²` for every basis index.
    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probability that `qubit` reads `1` in the Z basis.
    pub fn probability_of_one(&self, qubit: usize) -> SimResult<T> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr()))
    }

    /// Measures one qubit and returns the outcome with the collapsed state.
    pub fn measure(
        &self,
        qubit: usize,
        basis: MeasurementBasis,
        rng: &mut Rng,
    ) -> SimResult<(u8, Self)> {
        let mut next = self.clone();
        let outcome = next.measure_in_place(qubit, basis, rng)?;
        Ok((outcome, next))
    }

    pub fn measure_in_place(
        &mut self,
        qubit: usize,
        basis: MeasurementBasis,
        rng: &mut Rng,
    ) -> SimResult<u8> {
        self.check_qubit(qubit)?;
        let h = GateSpec::h(qubit);
        if basis == MeasurementBasis::X {
            self.apply_gate_in_place(&h)?;
        }
        let mask = 1usize << qubit;
        let (mut p0, mut p1) = (T::zero(), T::zero());
        for (i, a) in self.amps.iter().enumerate() {
            if i & mask == 0 {
                p0 = p0 + a.norm_sqr();
            } else {
                p1 = p1 + a.norm_sqr();
            }
        }
        // Exact zeros short-circuit so a collapsed qubit never resamples.
        let u = T::from_f64_lossy(rng.next_unit());
        let outcome = if p1 <= T::zero() {
            0
        } else if p0 <= T::zero() {
            1
        } else if u < p0 / (p0 + p1) {
            0
        } else {
            1
        };
        self.collapse(qubit, outcome);
        if basis == MeasurementBasis::X {
            self.apply_gate_in_place(&h)?;
        }
        Ok(outcome)
    }

    /// Projects `qubit` onto a Z-basis outcome and renormalizes.
    fn collapse(&mut self, qubit: usize, outcome: u8) {
        let mask = 1usize << qubit;
        let keep = if outcome == 0 { 0 } else { mask };
        let mut kept = T::zero();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == keep {
                kept = kept + a.norm_sqr();
            } else {
                *a = Complex::new(T::zero(), T::zero());
            }
        }
        let scale = T::one() / kept.sqrt();
        for a in self.amps.iter_mut() {
            *a = *a * scale;
        }
    }

    /// Single-qubit reduced density matrix `ρ`, tracing out every other qubit.
    pub fn reduced_density_matrix(&self, qubit: usize) -> SimResult<[[Complex<T>; 2]; 2]> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let zero = Complex::new(T::zero(), T::zero());
        let (mut r00, mut r11, mut r01) = (T::zero(), T::zero(), zero);
        for i in (0..self.amps.len()).filter(|i| i & mask == 0) {
            let a0 = self.amps[i];
            let a1 = self.amps[i | mask];
            r00 = r00 + a0.norm_sqr();
            r11 = r11 + a1.norm_sqr();
            r01 = r01 + a0 * a1.conj();
        }
        Ok([
            [Complex::new(r00, T::zero()), r01],
            [r01.conj(), Complex::new(r11, T::zero())],
        ])
    }

    /// `(Tr ρσx, Tr ρσy, Tr ρσz)` of the qubit's reduced state.
    pub fn bloch_vector(&self, qubit: usize) -> SimResult<BlochVector<T>> {
        let rho = self.reduced_density_matrix(qubit)?;
        let two = T::one() + T::one();
        Ok(BlochVector {
            x: two * rho[0][1].re,
            y: -two * rho[0][1].im,
            z: rho[0][0].re - rho[1][1].re,
        })
    }

    /// `Tr ρ²` of the qubit's reduced state.
    pub fn purity(&self, qubit: usize) -> SimResult<T> {
        let rho = self.reduced_density_matrix(qubit)?;
        let two = T::one() + T::one();
        Ok(rho[0][0].re * rho[0][0].re + rho[1][1].re * rho[1][1].re + two * rho[0][1].norm_sqr())
    }

    /// True when the qubit's reduced state is mixed, i.e. it shares
    /// entanglement with the rest of the register.
    pub fn is_entangled(&self, qubit: usize) -> SimResult<bool> {
        if self.num_qubits < 2 {
            return Err(SimError::Precondition(
                "entanglement needs at least two qubits".into(),
            ));
        }
        Ok(self.purity(qubit)? < T::one() - T::purity_tolerance())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> SimResult<T> {
        if self.num_qubits != other.num_qubits {
            return Err(SimError::DimensionMismatch(self.num_qubits, other.num_qubits));
        }
        let inner = self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            });
        Ok(inner.norm_sqr().min(T::one()))
    }

    /// Same state multiplied by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: T) -> Self {
        let factor = Complex::from_polar(T::one(), phi);
        Self {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Converts every amplitude to another scalar type.
    pub fn cast<U: Scalar>(&self) -> StateVector<U> {
        StateVector {
            num_qubits: self.num_qubits,
            amps: self
                .amps
                .iter()
                .map(|a| {
                    Complex::new(
                        U::from_f64_lossy(a.re.to_f64_lossy()),
                        U::from_f64_lossy(a.im.to_f64_lossy()),
                    )
                })
                .collect(),
        }
    }
}

fn check_size(num_qubits: usize) -> SimResult<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(SimError::Size {
            requested: num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}
