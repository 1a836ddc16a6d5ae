//! Classical baselines: unordered linear search and trial division.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{invalid, AlgorithmResult};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub found_index: u64,
    /// 1-based scan position at which the target was found.
    pub comparisons: u64,
}

/// Scans a seeded random ordering of `0..n` for `target`.
pub fn linear_search(n: u64, target: u64, rng: &mut Rng) -> AlgorithmResult<SearchOutcome> {
    if target >= n {
        return invalid(format!("target {target} outside 0..{n}"));
    }
    let mut order: Vec<u64> = (0..n).collect();
    order.shuffle(rng);
    linear_search_in_order(&order, target)
}

/// Scans `order` front to back.
pub fn linear_search_in_order(order: &[u64], target: u64) -> AlgorithmResult<SearchOutcome> {
    match order.iter().position(|&x| x == target) {
        Some(pos) => Ok(SearchOutcome {
            found_index: target,
            comparisons: pos as u64 + 1,
        }),
        None => invalid(format!("target {target} not present")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialDivision {
    /// Prime factors in ascending order, with multiplicity.
    pub factors: Vec<u64>,
    /// Divisibility tests performed.
    pub trials: u64,
}

pub fn trial_division(n: u64) -> AlgorithmResult<TrialDivision> {
    if n < 2 {
        return invalid(format!("cannot factor {n}"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut trials = 0;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        trials += 1;
        if rest.is_multiple_of(d) {
            factors.push(d);
            rest /= d;
        } else {
            d += if d == 2 { 1 } else { 2 };
        }
    }
    if rest > 1 {
        factors.push(rest);
    }
    Ok(TrialDivision { factors, trials })
}
