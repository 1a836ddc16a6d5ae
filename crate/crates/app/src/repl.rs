use std::io::{self, BufRead, Write};

use qana_core::dsl::{parse_instruction, Instruction};
use qana_core::{Rng, StateVector64, MAX_QUBITS};
use qana_lessons::Catalog;

use crate::view::render_state;

const HELP: &str = "\
enter one instruction per line, e.g. `h 0`, `cnot 0 1`, `measure 0 z`
commands: undo, reset, state, history, help, quit";

/// An interactive register. Each accepted instruction pushes a snapshot so
/// `undo` can restore the previous state exactly.
pub struct Repl<'a> {
    state: StateVector64,
    snapshots: Vec<StateVector64>,
    history: Vec<Instruction>,
    rng: Rng,
    catalog: &'a Catalog,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Quit,
}

impl<'a> Repl<'a> {
    pub fn new(num_qubits: usize, seed: u64, catalog: &'a Catalog) -> Result<Self, String> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(format!("register size {num_qubits} outside 1..={MAX_QUBITS}"));
        }
        Ok(Repl {
            state: StateVector64::new_register(num_qubits).map_err(|e| e.to_string())?,
            snapshots: Vec::new(),
            history: Vec::new(),
            rng: Rng::seeded(seed),
            catalog,
        })
    }

    pub fn state(&self) -> &StateVector64 {
        &self.state
    }

    pub fn history(&self) -> &[Instruction] {
        &self.history
    }

    pub fn handle(&mut self, line: &str, out: &mut impl Write) -> io::Result<Flow> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(Flow::Continue);
        }
        match line.to_ascii_lowercase().as_str() {
            "quit" | "exit" => return Ok(Flow::Quit),
            "help" => writeln!(out, "{HELP}")?,
            "state" => write!(out, "{}", render_state(&self.state))?,
            "history" => {
                for (i, instr) in self.history.iter().enumerate() {
                    writeln!(out, "{i:>3}  {instr}")?;
                }
            }
            "reset" => {
                self.state = StateVector64::new_register(self.state.num_qubits()).expect("valid size");
                self.snapshots.clear();
                self.history.clear();
                write!(out, "{}", render_state(&self.state))?;
            }
            "undo" => match (self.snapshots.pop(), self.history.pop()) {
                (Some(prev), Some(instr)) => {
                    self.state = prev;
                    writeln!(out, "undone: {instr}")?;
                    write!(out, "{}", render_state(&self.state))?;
                }
                _ => writeln!(out, "nothing to undo")?,
            },
            _ => self.apply(line, out)?,
        }
        Ok(Flow::Continue)
    }

    fn apply(&mut self, line: &str, out: &mut impl Write) -> io::Result<()> {
        let instr = match parse_instruction(line, self.state.num_qubits()) {
            Ok(i) => i,
            Err(e) => return writeln!(out, "error: column {}: {} (`{}`)", e.column, e.message, e.offending_token),
        };
        let before = self.state.clone();
        let outcome = match instr.apply(&mut self.state, &mut self.rng) {
            Ok(o) => o,
            Err(e) => {
                self.state = before;
                return writeln!(out, "error: {e}");
            }
        };
        self.snapshots.push(before);
        if let (Some(o), Instruction::Measure { qubit, basis }) = (outcome, &instr) {
            writeln!(out, "measured qubit {qubit} in {} basis: {} ({})", basis.mnemonic(), o, basis.outcome_label(o))?;
        }
        write!(out, "{}", render_state(&self.state))?;
        if let Some(a) = instr.gate().and_then(|g| self.catalog.gate_analogy(&g.kind)) {
            writeln!(out, "analogy: {} - {}", a.title, a.body)?;
        }
        self.history.push(instr);
        Ok(())
    }
}

/// Reads lines until EOF or `quit`.
pub fn run_repl(
    input: impl BufRead,
    out: &mut impl Write,
    num_qubits: usize,
    seed: u64,
    catalog: &Catalog,
) -> io::Result<()> {
    let mut repl = match Repl::new(num_qubits, seed, catalog) {
        Ok(r) => r,
        Err(e) => return Err(io::Error::new(io::ErrorKind::InvalidInput, e)),
    };
    writeln!(out, "{num_qubits}-qubit register, seed {seed}. Type `help` for commands.")?;
    write!(out, "{}", render_state(repl.state()))?;
    write!(out, "qana> ")?;
    out.flush()?;
    for line in input.lines() {
        if repl.handle(&line?, out)? == Flow::Quit {
            break;
        }
        write!(out, "qana> ")?;
        out.flush()?;
    }
    writeln!(out)?;
    Ok(())
}
