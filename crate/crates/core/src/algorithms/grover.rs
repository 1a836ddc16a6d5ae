//! Amplitude amplification for a single marked item.
//!
//! Search spaces that are not a power of two are padded up to the next
//! power of two; padded indices are never marked. The marked amplitude
//! grows roughly additively (≈ 2/√N′ per iteration early on), not by
//! doubling, and peaks near `π/4 · √N′` iterations.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{ceil_sqrt, invalid, AlgorithmResult};
use crate::gate::GateSpec;
use crate::state::{StateVector, MAX_QUBITS};

/// `floor(π/4 · √N′)` for the padded size `N′`, at least 1.
pub fn optimal_grover_iterations(n: u64) -> AlgorithmResult<u64> {
    if n < 2 {
        return invalid(format!("search space must hold at least 2 items, got {n}"));
    }
    let padded = padded_size(n)?;
    let r = (std::f64::consts::FRAC_PI_4 * (padded as f64).sqrt()).floor() as u64;
    Ok(r.max(1))
}

fn padded_size(n: u64) -> AlgorithmResult<u64> {
    let padded = n.next_power_of_two();
    if padded.trailing_zeros() as usize > MAX_QUBITS {
        return invalid(format!("search space {n} needs more than {MAX_QUBITS} qubits"));
    }
    Ok(padded)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverReport {
    pub search_space_size: u64,
    pub padded_size: u64,
    pub marked_index: u64,
    pub iterations_run: u64,
    /// Marked amplitude after each iteration (amplitudes stay real).
    pub marked_amplitude_trace: Vec<f64>,
    pub final_success_probability: f64,
    /// `ceil(√N)`, the headline figure quoted in lessons.
    pub pedagogical_query_count: u64,
    /// Probability of every basis index after each iteration, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability_frames: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GroverOptions {
    /// Defaults to [`optimal_grover_iterations`].
    pub iterations: Option<u64>,
    /// Record full probability frames (only for padded sizes up to
    /// [`GroverOptions::MAX_FRAME_SIZE`]).
    pub record_frames: bool,
}

impl GroverOptions {
    pub const MAX_FRAME_SIZE: u64 = 4096;
}

pub fn grover_search(n: u64, marked: u64, iterations: Option<u64>) -> AlgorithmResult<GroverReport> {
    grover_search_with(
        n,
        marked,
        GroverOptions {
            iterations,
            record_frames: false,
        },
    )
}

pub fn grover_search_with(n: u64, marked: u64, opts: GroverOptions) -> AlgorithmResult<GroverReport> {
    let default_iterations = optimal_grover_iterations(n)?;
    if marked >= n {
        return invalid(format!("marked index {marked} outside 0..{n}"));
    }
    let padded = padded_size(n)?;
    let iterations = opts.iterations.unwrap_or(default_iterations);
    let num_qubits = padded.trailing_zeros() as usize;

    let mut state = StateVector::<f64>::new_register(num_qubits)?;
    for q in 0..num_qubits {
        state.apply_gate_in_place(&GateSpec::h(q))?;
    }

    let marked_idx = marked as usize;
    let record = opts.record_frames && padded <= GroverOptions::MAX_FRAME_SIZE;
    let mut trace = Vec::with_capacity(iterations as usize);
    let mut frames = record.then(Vec::new);
    for _ in 0..iterations {
        phase_flip(&mut state, marked_idx);
        invert_about_mean(&mut state);
        trace.push(state.amplitudes()[marked_idx].re);
        if let Some(frames) = frames.as_mut() {
            frames.push(state.probabilities());
        }
    }

    Ok(GroverReport {
        search_space_size: n,
        padded_size: padded,
        marked_index: marked,
        iterations_run: iterations,
        final_success_probability: state.amplitudes()[marked_idx].norm_sqr(),
        marked_amplitude_trace: trace,
        pedagogical_query_count: ceil_sqrt(n),
        probability_frames: frames,
    })
}

/// Oracle: `|x⟩ → −|x⟩` for the marked index only.
fn phase_flip(state: &mut StateVector<f64>, marked: usize) {
    let amps = state.amplitudes_mut();
    amps[marked] = -amps[marked];
}

/// Diffusion `2|s⟩⟨s| − I`: every amplitude is reflected about the mean.
fn invert_about_mean(state: &mut StateVector<f64>) {
    let amps = state.amplitudes_mut();
    let mean = amps.iter().sum::<Complex<f64>>() / amps.len() as f64;
    for a in amps.iter_mut() {
        *a = mean * 2.0 - *a;
    }
}
