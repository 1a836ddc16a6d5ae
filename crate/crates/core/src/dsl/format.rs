use std::fmt::Write;

use super::{Circuit, Instruction};
use crate::gate::GateKind;

/// Canonical text for a circuit: lower-case mnemonics, single spaces,
/// angles with 17 significant digits, LF line endings.
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::new();
    if let Some(name) = &circuit.name {
        let flat: String = name
            .chars()
            .map(|c| if c == '\n' || c == '\r' { ' ' } else { c })
            .collect();
        let _ = writeln!(out, "# name: {}", flat.trim());
    }
    let _ = writeln!(out, "qubits {}", circuit.num_qubits);
    for instr in &circuit.instructions {
        out.push_str(&format_instruction(instr));
        out.push('\n');
    }
    out
}

pub(crate) fn format_instruction(instr: &Instruction) -> String {
    match instr {
        Instruction::Barrier => "barrier".to_string(),
        Instruction::Measure { qubit, basis } => format!("measure {qubit} {}", basis.mnemonic()),
        Instruction::Gate { gate } => {
            let mut line = gate.kind.mnemonic().to_string();
            if let GateKind::Phase(t) | GateKind::ControlledPhase(t) = gate.kind {
                line.push(' ');
                line.push_str(&format_angle(t));
            }
            for q in gate.qubits() {
                let _ = write!(line, " {q}");
            }
            line
        }
    }
}

/// Positional decimal with exactly 17 significant digits, enough to
/// round-trip any `f64`. The digits are the correctly rounded decimal of
/// the binary value, so `f64` π/4 prints as `0.78539816339744828`.
pub fn format_angle(value: f64) -> String {
    let sci = format!("{:.16e}", value.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if value.is_sign_negative() && value != 0.0 { "-" } else { "" };
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            let mut s = digits.clone();
            s.extend(std::iter::repeat_n('0', int_len - digits.len()));
            s.push_str(".0");
            s
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("0.{zeros}{digits}")
    };
    format!("{sign}{body}")
}
