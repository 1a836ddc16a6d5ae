//! Factoring by order finding.
//!
//! Two modes share all classical post-processing:
//!
//! * `FullCircuit` runs phase estimation on the statevector: `2L` counting
//!   qubits over an `L`-qubit work register, `L = ⌈log2 N⌉`. Controlled
//!   multiplication by `a^(2^k) mod N` is applied as an index permutation
//!   of the work register (identity on work values ≥ N), which is a
//!   bijection because `a` is coprime to `N`.
//! * `Hybrid` replaces the quantum subroutine with a brute-force order
//!   search so larger classroom examples such as 143 stay runnable.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::qft::inverse_qft;
use super::{gcd, invalid, mod_pow, AlgorithmResult};
use crate::gate::GateSpec;
use crate::rng::Rng;
use crate::state::{MeasurementBasis, StateVector, MAX_QUBITS};

/// Random bases tried before giving up.
pub const DEFAULT_ATTEMPT_CAP: usize = 32;

/// Largest modulus accepted (8-bit).
pub const MAX_MODULUS: u64 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShorMode {
    FullCircuit,
    Hybrid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShorAttempt {
    pub a: u64,
    /// Order obtained for `a` (candidate from phase estimation, or the
    /// exact order in hybrid mode). Absent on the lucky-gcd path or when
    /// phase estimation gave no usable candidate.
    pub order_r: Option<u64>,
    pub accepted: bool,
    pub reason: String,
    /// Raw counting-register reading (full-circuit mode only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub mode: ShorMode,
    pub attempts: Vec<ShorAttempt>,
    /// Smaller factor first.
    pub factors: Option<(u64, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counting_qubits: Option<usize>,
}

/// Smallest `r ≥ 1` with `a^r ≡ 1 (mod n)`, by iteration.
pub fn order_find_bruteforce(a: u64, n: u64) -> AlgorithmResult<u64> {
    if n < 2 || a <= 1 || a >= n {
        return invalid(format!("need 1 < a < N, got a={a}, N={n}"));
    }
    if gcd(a, n) != 1 {
        return invalid(format!("gcd({a}, {n}) = {} ≠ 1", gcd(a, n)));
    }
    let mut x = a % n;
    let mut r = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        r += 1;
    }
    Ok(r)
}

/// Expands `measured / 2^counting` as a continued fraction and returns the
/// largest convergent denominator not exceeding `n`.
pub fn continued_fraction_order(measured: u64, counting: u32, n: u64) -> Option<u64> {
    if measured == 0 || counting >= 64 {
        return None;
    }
    let (mut num, mut den) = (measured as u128, 1u128 << counting);
    // Convergent denominators q_k = a_k q_{k-1} + q_{k-2}.
    let (mut q_prev, mut q) = (1u128, 0u128);
    let mut best = None;
    while den != 0 {
        let a = num / den;
        (num, den) = (den, num - a * den);
        let q_next = a * q + q_prev;
        (q_prev, q) = (q, q_next);
        if q > n as u128 {
            break;
        }
        best = Some(q as u64);
    }
    best
}

fn bit_length(n: u64) -> usize {
    (64 - n.leading_zeros()) as usize
}

/// Qubits needed by full-circuit mode: `(counting, work)`.
pub fn full_circuit_register(n: u64) -> (usize, usize) {
    let work = bit_length(n);
    (2 * work, work)
}

/// One round of phase estimation for the order of `a` mod `n`. Returns the
/// counting-register reading and the continued-fraction candidate.
pub fn order_find_quantum(a: u64, n: u64, rng: &mut Rng) -> AlgorithmResult<(u64, Option<u64>)> {
    if gcd(a, n) != 1 || a <= 1 || a >= n {
        return invalid(format!("need 1 < a < N coprime, got a={a}, N={n}"));
    }
    let (t, work) = full_circuit_register(n);
    if t + work > MAX_QUBITS {
        return invalid(format!(
            "N={n} needs {} qubits, above the {MAX_QUBITS}-qubit cap",
            t + work
        ));
    }
    let count_mask = (1usize << t) - 1;
    let modulus = n as usize;
    let mut state = StateVector::<f64>::basis_state(t + work, 1 << t)?;
    for q in 0..t {
        state.apply_gate_in_place(&GateSpec::h(q))?;
    }
    for k in 0..t {
        let mult = mod_pow(a, 1 << k, n) as usize;
        state.apply_permutation(|i| {
            let y = i >> t;
            if i & (1 << k) == 0 || y >= modulus {
                i
            } else {
                (i & count_mask) | ((y * mult % modulus) << t)
            }
        })?;
    }
    let counting: Vec<usize> = (0..t).collect();
    state = inverse_qft(&state, &counting)?;
    let mut measured = 0u64;
    for q in 0..t {
        let bit = state.measure_in_place(q, MeasurementBasis::Z, rng)?;
        measured |= (bit as u64) << q;
    }
    Ok((measured, continued_fraction_order(measured, t as u32, n)))
}

fn check_modulus(n: u64) -> AlgorithmResult<()> {
    if !(15..=MAX_MODULUS).contains(&n) {
        return invalid(format!("N must lie in 15..={MAX_MODULUS}, got {n}"));
    }
    if n.is_multiple_of(2) {
        return invalid(format!("N={n} is even"));
    }
    let smallest = (3..).step_by(2).find(|d| d * d > n || n.is_multiple_of(*d)).unwrap_or(n);
    if smallest * smallest > n {
        return invalid(format!("N={n} is prime"));
    }
    let mut m = n;
    while m.is_multiple_of(smallest) {
        m /= smallest;
    }
    if m == 1 {
        return invalid(format!("N={n} is a prime power"));
    }
    Ok(())
}

/// Runs a single attempt with a chosen base `a`.
pub fn shor_attempt(n: u64, a: u64, mode: ShorMode, rng: &mut Rng) -> AlgorithmResult<ShorAttempt> {
    check_modulus(n)?;
    if a < 2 || a > n - 2 {
        return invalid(format!("base a={a} outside 2..={}", n - 2));
    }
    let mut attempt = ShorAttempt {
        a,
        order_r: None,
        accepted: false,
        reason: String::new(),
        measured: None,
        factors: None,
    };
    let g = gcd(a, n);
    if g > 1 {
        attempt.accepted = true;
        attempt.reason = format!("lucky guess: gcd({a}, {n}) = {g}");
        attempt.factors = Some(ordered(g, n / g));
        return Ok(attempt);
    }

    let r = match mode {
        ShorMode::Hybrid => order_find_bruteforce(a, n)?,
        ShorMode::FullCircuit => {
            let (measured, candidate) = order_find_quantum(a, n, rng)?;
            attempt.measured = Some(measured);
            let Some(r) = candidate else {
                attempt.reason = format!("measured {measured}: no order information");
                return Ok(attempt);
            };
            attempt.order_r = Some(r);
            if mod_pow(a, r, n) != 1 {
                attempt.reason = format!("candidate r={r} fails a^r ≡ 1 (mod {n})");
                return Ok(attempt);
            }
            r
        }
    };
    attempt.order_r = Some(r);
    if r % 2 == 1 {
        attempt.reason = format!("r={r} is odd");
        return Ok(attempt);
    }
    let half = mod_pow(a, r / 2, n);
    if half == n - 1 {
        attempt.reason = format!("a^(r/2) ≡ −1 (mod {n})");
        return Ok(attempt);
    }
    for f in [gcd(half + n - 1, n), gcd(half + 1, n)] {
        if f > 1 && f < n {
            attempt.accepted = true;
            attempt.reason = format!("gcd(a^(r/2) ± 1, N) splits N (a^(r/2) ≡ {half})");
            attempt.factors = Some(ordered(f, n / f));
            return Ok(attempt);
        }
    }
    attempt.reason = format!("a^(r/2) ≡ {half} gives only trivial factors");
    Ok(attempt)
}

fn ordered(p: u64, q: u64) -> (u64, u64) {
    (p.min(q), p.max(q))
}

pub fn shor_factor(n: u64, mode: ShorMode, rng: &mut Rng) -> AlgorithmResult<FactorReport> {
    shor_factor_with_cap(n, mode, DEFAULT_ATTEMPT_CAP, rng)
}

/// Tries random bases `a ∈ [2, N−2]` until one splits `N` or the cap is
/// reached; a capped-out run returns a report without factors.
pub fn shor_factor_with_cap(
    n: u64,
    mode: ShorMode,
    cap: usize,
    rng: &mut Rng,
) -> AlgorithmResult<FactorReport> {
    check_modulus(n)?;
    let counting_qubits = match mode {
        ShorMode::FullCircuit => {
            let (t, work) = full_circuit_register(n);
            if t + work > MAX_QUBITS {
                return invalid(format!(
                    "N={n} needs {} qubits in full-circuit mode, above the {MAX_QUBITS}-qubit cap",
                    t + work
                ));
            }
            Some(t)
        }
        ShorMode::Hybrid => None,
    };
    let mut report = FactorReport {
        n,
        mode,
        attempts: Vec::new(),
        factors: None,
        counting_qubits,
    };
    for _ in 0..cap {
        let a = rng.gen_range(2..=n - 2);
        let attempt = shor_attempt(n, a, mode, rng)?;
        let done = attempt.factors;
        report.attempts.push(attempt);
        if done.is_some() {
            report.factors = done;
            break;
        }
    }
    Ok(report)
}
