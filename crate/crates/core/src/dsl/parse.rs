use std::fmt;

use serde::{Deserialize, Serialize};

use super::validate::{validate, Violation};
use super::{Circuit, Instruction};
use crate::gate::GateSpec;
use crate::state::MeasurementBasis;

/// First error found in a circuit source. `line` and `column` are 1-based
/// and count characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub offending_token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )?;
        if !self.offending_token.is_empty() {
            write!(f, " (`{}`)", self.offending_token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
            offending_token: self.text.to_string(),
        }
    }
}

/// Splits one source line into tokens, dropping any `#` comment.
fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in code.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col)),
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &code[b..byte],
                    line: line_no,
                    column: c + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &code[b..],
            line: line_no,
            column: c + 1,
        });
    }
    tokens
}

fn source_lines(source: &str) -> impl Iterator<Item = (usize, &str)> {
    source
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

fn name_directive(line: &str) -> Option<&str> {
    let rest = line.trim_start().strip_prefix('#')?;
    rest.trim_start().strip_prefix("name:").map(str::trim)
}

/// Operand tokens of one parsed instruction, kept for error positions.
pub(crate) struct Located<'a> {
    mnemonic: Token<'a>,
    operands: Vec<Token<'a>>,
}

fn parse_with_tokens(source: &str) -> Result<(Circuit, Vec<Located<'_>>), ParseError> {
    let mut name = None;
    let mut header: Option<usize> = None;
    let mut instructions = Vec::new();
    let mut located = Vec::new();

    for (line_no, line) in source_lines(source) {
        let tokens = tokenize(line, line_no);
        let Some((head, args)) = tokens.split_first() else {
            if header.is_none() && name.is_none() {
                name = name_directive(line).map(str::to_string);
            }
            continue;
        };
        let mnemonic = head.text.to_ascii_lowercase();
        if mnemonic == "qubits" {
            if header.is_some() {
                return Err(head.error("duplicate header"));
            }
            expect_operands(head, args, 1)?;
            let n = parse_index(&args[0])?;
            if n == 0 {
                return Err(args[0].error("register needs at least one qubit"));
            }
            header = Some(n);
            continue;
        }
        if header.is_none() {
            return Err(head.error("missing header: expected `qubits N` first"));
        }
        let instr = parse_body(head, &mnemonic, args)?;
        instructions.push(instr);
        located.push(Located {
            mnemonic: head.clone(),
            operands: args.to_vec(),
        });
    }

    let Some(num_qubits) = header else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "missing header: expected `qubits N` first".into(),
            offending_token: String::new(),
        });
    };
    Ok((
        Circuit {
            num_qubits,
            instructions,
            name,
        },
        located,
    ))
}

/// Parses circuit source text. Stops at the first error.
pub fn parse(source: &str) -> Result<Circuit, ParseError> {
    parse_with_tokens(source).map(|(c, _)| c)
}

/// Parses then validates, reporting the first violation at the position of
/// the operand that caused it.
pub fn parse_and_validate(source: &str) -> Result<Circuit, ParseError> {
    let (circuit, located) = parse_with_tokens(source)?;
    match validate(&circuit) {
        Ok(()) => Ok(circuit),
        Err(violations) => Err(locate(&violations[0], &located, source)),
    }
}

fn locate(v: &Violation, located: &[Located<'_>], source: &str) -> ParseError {
    if let Some(loc) = v.instruction_index.and_then(|i| located.get(i)) {
        let tok = v
            .qubit
            .and_then(|q| {
                loc.operands
                    .iter()
                    .rev()
                    .find(|t| t.text.parse::<usize>().ok() == Some(q))
            })
            .unwrap_or(&loc.mnemonic);
        return tok.error(v.message.clone());
    }
    // Register-level violation: point at the header.
    let header = source_lines(source)
        .flat_map(|(n, l)| tokenize(l, n))
        .find(|t| t.text.eq_ignore_ascii_case("qubits"));
    match header {
        Some(t) => t.error(v.message.clone()),
        None => ParseError {
            line: 1,
            column: 1,
            message: v.message.clone(),
            offending_token: String::new(),
        },
    }
}

/// Parses a single instruction line against a register of `num_qubits`,
/// as typed into the REPL or posted to a session. Positions refer to line 1.
pub fn parse_instruction(line: &str, num_qubits: usize) -> Result<Instruction, ParseError> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.contains('\n') {
        let col = line.chars().position(|c| c == '\n').unwrap_or(0) + 1;
        return Err(ParseError {
            line: 1,
            column: col,
            message: "expected a single instruction line".into(),
            offending_token: String::new(),
        });
    }
    let tokens = tokenize(line, 1);
    let Some((head, args)) = tokens.split_first() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty instruction".into(),
            offending_token: String::new(),
        });
    };
    let mnemonic = head.text.to_ascii_lowercase();
    if mnemonic == "qubits" {
        return Err(head.error("header not allowed here"));
    }
    let instr = parse_body(head, &mnemonic, args)?;
    if let Err(v) = super::validate_instruction(&instr, num_qubits) {
        let loc = Located {
            mnemonic: head.clone(),
            operands: args.to_vec(),
        };
        return Err(locate(&Violation { instruction_index: Some(0), ..v }, &[loc], line));
    }
    Ok(instr)
}

fn parse_body(head: &Token<'_>, mnemonic: &str, args: &[Token<'_>]) -> Result<Instruction, ParseError> {
    let instr = match mnemonic {
        "x" | "y" | "z" | "h" => {
            expect_operands(head, args, 1)?;
            let q = parse_index(&args[0])?;
            match mnemonic {
                "x" => GateSpec::x(q),
                "y" => GateSpec::y(q),
                "z" => GateSpec::z(q),
                _ => GateSpec::h(q),
            }
            .into()
        }
        "phase" => {
            expect_operands(head, args, 2)?;
            GateSpec::phase(parse_angle(&args[0])?, parse_index(&args[1])?).into()
        }
        "cphase" => {
            expect_operands(head, args, 3)?;
            GateSpec::cphase(
                parse_angle(&args[0])?,
                parse_index(&args[1])?,
                parse_index(&args[2])?,
            )
            .into()
        }
        "cnot" => {
            expect_operands(head, args, 2)?;
            GateSpec::cnot(parse_index(&args[0])?, parse_index(&args[1])?).into()
        }
        "toffoli" => {
            expect_operands(head, args, 3)?;
            GateSpec::toffoli(
                parse_index(&args[0])?,
                parse_index(&args[1])?,
                parse_index(&args[2])?,
            )
            .into()
        }
        "measure" => {
            expect_operands(head, args, 2)?;
            let qubit = parse_index(&args[0])?;
            let basis = match args[1].text.to_ascii_lowercase().as_str() {
                "z" => MeasurementBasis::Z,
                "x" => MeasurementBasis::X,
                _ => return Err(args[1].error("unknown basis, expected `z` or `x`")),
            };
            Instruction::Measure { qubit, basis }
        }
        "barrier" => {
            expect_operands(head, args, 0)?;
            Instruction::Barrier
        }
        _ => return Err(head.error("unknown instruction")),
    };
    Ok(instr)
}

fn expect_operands(head: &Token<'_>, args: &[Token<'_>], n: usize) -> Result<(), ParseError> {
    match args.len().cmp(&n) {
        std::cmp::Ordering::Equal => Ok(()),
        std::cmp::Ordering::Greater => Err(args[n].error(format!(
            "`{}` takes {n} operand(s), found {}",
            head.text,
            args.len()
        ))),
        std::cmp::Ordering::Less => Err(head.error(format!(
            "`{}` takes {n} operand(s), found {}",
            head.text,
            args.len()
        ))),
    }
}

fn parse_index(tok: &Token<'_>) -> Result<usize, ParseError> {
    if !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(tok.error("malformed number: expected a non-negative integer"));
    }
    tok.text
        .parse()
        .map_err(|_| tok.error("malformed number: integer too large"))
}

fn parse_angle(tok: &Token<'_>) -> Result<f64, ParseError> {
    let ok_chars = tok
        .text
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
    match tok.text.parse::<f64>() {
        Ok(v) if ok_chars && v.is_finite() => Ok(v),
        _ => Err(tok.error("malformed number: expected a decimal angle in radians")),
    }
}
