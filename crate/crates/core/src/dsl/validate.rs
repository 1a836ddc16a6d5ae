use serde::{Deserialize, Serialize};

use super::{Circuit, Instruction};
use crate::error::SimError;
use crate::state::MAX_QUBITS;

/// One problem found by [`validate`]. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Offending instruction, or `None` for register-level problems.
    pub instruction_index: Option<usize>,
    /// Qubit index that caused the problem, when there is one.
    pub qubit: Option<usize>,
    pub message: String,
}

/// Checks every instruction against the declared register.
pub fn validate(circuit: &Circuit) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    if circuit.num_qubits == 0 || circuit.num_qubits > MAX_QUBITS {
        violations.push(Violation {
            instruction_index: None,
            qubit: None,
            message: format!(
                "register size {} outside 1..={MAX_QUBITS}",
                circuit.num_qubits
            ),
        });
    }
    for (i, instr) in circuit.instructions.iter().enumerate() {
        if let Err(v) = validate_instruction(instr, circuit.num_qubits) {
            violations.push(Violation {
                instruction_index: Some(i),
                ..v
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Checks a single instruction; the returned violation has no index set.
pub fn validate_instruction(instr: &Instruction, num_qubits: usize) -> Result<(), Violation> {
    let err = |qubit, message: &str| Violation {
        instruction_index: None,
        qubit,
        message: message.to_string(),
    };
    match instr {
        Instruction::Barrier => Ok(()),
        Instruction::Measure { qubit, .. } if *qubit >= num_qubits => {
            Err(err(Some(*qubit), "index out of range"))
        }
        Instruction::Measure { .. } => Ok(()),
        Instruction::Gate { gate } => match gate.check(num_qubits) {
            Ok(()) => Ok(()),
            Err(SimError::IndexOutOfRange { index, .. }) => {
                Err(err(Some(index), "index out of range"))
            }
            Err(SimError::DuplicateIndex(q)) => Err(err(Some(q), "duplicate control/target")),
            Err(e) => Err(err(None, &e.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::gate::{GateKind, GateSpec};

    #[test]
    fn bell_is_ok() {
        assert_eq!(validate(&parse("qubits 2\nh 0\ncnot 0 1").unwrap()), Ok(()));
    }

    #[test]
    fn duplicate_control_target() {
        let v = validate(&parse("qubits 2\ncnot 0 0").unwrap()).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].message, "duplicate control/target");
        assert_eq!(v[0].instruction_index, Some(0));
    }

    #[test]
    fn out_of_range_gate_and_measure() {
        let v = validate(&parse("qubits 2\nh 5\nmeasure 7 z\nh 1").unwrap()).unwrap_err();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|v| v.message == "index out of range"));
        assert_eq!(v[1].qubit, Some(7));
    }

    #[test]
    fn register_and_arity() {
        let v = validate(&Circuit::new(21)).unwrap_err();
        assert_eq!(v[0].instruction_index, None);
        let mut c = Circuit::new(2);
        c.push(GateSpec {
            kind: GateKind::Cnot,
            targets: vec![0],
            controls: vec![],
        });
        let v = validate(&c).unwrap_err();
        assert!(v[0].message.contains("control"));
    }
}
