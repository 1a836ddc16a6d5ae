use std::fmt::Write as _;

use qana_core::StateVector64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeView {
    pub re: f64,
    pub im: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochView {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Everything the UI needs to draw a register. A pure function of the state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateView {
    pub num_qubits: usize,
    pub amplitudes: Vec<AmplitudeView>,
    pub bloch: Vec<BlochView>,
    pub entangled_flags: Vec<bool>,
}

impl StateView {
    pub fn of(state: &StateVector64) -> Self {
        let n = state.num_qubits();
        let amplitudes = state
            .amplitudes()
            .iter()
            .map(|a| AmplitudeView { re: a.re, im: a.im, probability: a.norm_sqr() })
            .collect();
        let bloch = (0..n)
            .map(|q| {
                let b = state.bloch_vector(q).expect("qubit in range");
                BlochView { x: b.x, y: b.y, z: b.z }
            })
            .collect();
        // A lone qubit cannot be entangled with anything.
        let entangled_flags = (0..n).map(|q| n > 1 && state.is_entangled(q).unwrap_or(false)).collect();
        StateView { num_qubits: n, amplitudes, bloch, entangled_flags }
    }
}

/// `|q_{n-1} … q_0>`, qubit 0 rightmost.
pub fn ket(index: usize, num_qubits: usize) -> String {
    format!("|{:0width$b}>", index, width = num_qubits.max(1))
}

pub fn fixed(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn format_bloch(b: &BlochView) -> String {
    format!("({}, {}, {})", fixed(b.x, 4), fixed(b.y, 4), fixed(b.z, 4))
}

/// Nonzero amplitudes, then one Bloch line per qubit.
pub fn render_state(state: &StateVector64) -> String {
    let view = StateView::of(state);
    let mut out = String::from("amplitudes:\n");
    for (i, a) in view.amplitudes.iter().enumerate() {
        if a.probability > 1e-12 {
            let sign = if a.im < 0.0 && fixed(a.im, 4) != "0.0000" { '-' } else { '+' };
            let _ = writeln!(
                out,
                "  {}  {}{}{}i  p={}",
                ket(i, view.num_qubits),
                fixed(a.re, 4),
                sign,
                fixed(a.im.abs(), 4),
                fixed(a.probability, 4)
            );
        }
    }
    for (q, b) in view.bloch.iter().enumerate() {
        let ent = if view.entangled_flags[q] { "  entangled" } else { "" };
        let _ = writeln!(out, "qubit {q}: bloch {}{ent}", format_bloch(b));
    }
    out
}

pub fn render_probabilities(state: &StateVector64) -> String {
    let mut out = String::new();
    for (i, p) in state.probabilities().iter().enumerate() {
        if *p > 1e-12 {
            let _ = writeln!(out, "  {}  {}", ket(i, state.num_qubits()), fixed(*p, 6));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qana_core::GateSpec;

    #[test]
    fn plus_state_view() {
        let s = StateVector64::new_register(1).unwrap().apply_gate(&GateSpec::h(0)).unwrap();
        let v = StateView::of(&s);
        assert_eq!(v.entangled_flags, vec![false]);
        assert!((v.bloch[0].x - 1.0).abs() < 1e-12);
        let total: f64 = v.amplitudes.iter().map(|a| a.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(render_state(&s).contains("bloch (1.0000, 0.0000, 0.0000)"));
    }

    #[test]
    fn negative_zero_prints_clean() {
        assert_eq!(fixed(-1e-17, 4), "0.0000");
        assert_eq!(fixed(-0.5, 2), "-0.50");
    }

    #[test]
    fn ket_labels() {
        assert_eq!(ket(1, 3), "|001>");
        assert_eq!(ket(6, 3), "|110>");
    }
}
