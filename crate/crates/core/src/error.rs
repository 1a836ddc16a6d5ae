use thiserror::Error;

/// Errors raised by the statevector simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("register size {requested} outside 1..={max}")]
    Size { requested: usize, max: usize },
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    IndexOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {0} used more than once in one gate")]
    DuplicateIndex(usize),
    #[error("{gate} takes {targets} target(s) and {controls} control(s)")]
    Arity {
        gate: &'static str,
        targets: usize,
        controls: usize,
    },
    #[error("registers differ in size: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("amplitude vector invalid: {0}")]
    InvalidAmplitudes(String),
    #[error("{0}")]
    Precondition(String),
}

pub type SimResult<T> = Result<T, SimError>;
