//! Line-oriented circuit language (`.qc` files).
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 0
//! cnot 0 1
//! measure 0 z
//! measure 1 z
//! ```
//!
//! One instruction per line, `#` starts a comment, angles are radians.
//! A comment of the form `# name: <text>` before the header names the
//! circuit. Input may use LF or CRLF; output always uses LF.

mod format;
mod parse;
mod run;
mod validate;

use serde::{Deserialize, Serialize};

use crate::error::SimResult;
use crate::gate::GateSpec;
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::state::{MeasurementBasis, StateVector};

pub use format::{format_angle, serialize};
pub use parse::{parse, parse_and_validate, parse_instruction, ParseError};
pub use run::{run, run_on, MeasurementRecord, RunError, RunResult};
pub use validate::{validate, validate_instruction, Violation};

/// File extension for circuit sources.
pub const FILE_EXTENSION: &str = "qc";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Instruction {
    Gate { gate: GateSpec },
    Measure { qubit: usize, basis: MeasurementBasis },
    /// Display-only step separator.
    Barrier,
}

impl Instruction {
    /// Executes the instruction on `state`, returning the outcome for a
    /// measurement.
    pub fn apply<T: Scalar>(
        &self,
        state: &mut StateVector<T>,
        rng: &mut Rng,
    ) -> SimResult<Option<u8>> {
        match self {
            Instruction::Gate { gate } => state.apply_gate_in_place(gate).map(|_| None),
            Instruction::Measure { qubit, basis } => {
                state.measure_in_place(*qubit, *basis, rng).map(Some)
            }
            Instruction::Barrier => Ok(None),
        }
    }

    pub fn gate(&self) -> Option<&GateSpec> {
        match self {
            Instruction::Gate { gate } => Some(gate),
            _ => None,
        }
    }
}

/// Canonical single-line form, as written by [`serialize`].
impl std::fmt::Display for Instruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format::format_instruction(self))
    }
}

impl From<GateSpec> for Instruction {
    fn from(gate: GateSpec) -> Self {
        Instruction::Gate { gate }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub instructions: Vec<Instruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            instructions: Vec::new(),
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn push(&mut self, instruction: impl Into<Instruction>) -> &mut Self {
        self.instructions.push(instruction.into());
        self
    }

    pub fn measure(&mut self, qubit: usize, basis: MeasurementBasis) -> &mut Self {
        self.instructions.push(Instruction::Measure { qubit, basis });
        self
    }
}
