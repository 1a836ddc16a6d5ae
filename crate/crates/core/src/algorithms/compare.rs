//! Classical step counts next to quantum resource counts.

use serde::{Deserialize, Serialize};

use super::classical::trial_division;
use super::grover::optimal_grover_iterations;
use super::shor::{shor_factor, ShorMode};
use super::{ceil_sqrt, invalid, AlgorithmResult};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Search,
    Factor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub problem: Problem,
    pub instance_size: u64,
    pub classical_steps: u64,
    pub quantum_resource: u64,
    pub quantum_resource_kind: String,
    /// Iterations that actually maximize success, next to the headline
    /// `ceil(√N)` figure (search only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal_grover_iterations: Option<u64>,
}

/// Worst-case linear scan (`N`) against `ceil(√N)` Grover queries.
pub fn compare_search(n: u64) -> AlgorithmResult<ComparisonReport> {
    if n < 2 {
        return invalid(format!("search space must hold at least 2 items, got {n}"));
    }
    Ok(ComparisonReport {
        problem: Problem::Search,
        instance_size: n,
        classical_steps: n,
        quantum_resource: ceil_sqrt(n),
        quantum_resource_kind: "Grover queries (pedagogical)".into(),
        optimal_grover_iterations: optimal_grover_iterations(n).ok(),
    })
}

/// Trial-division tests against the number of order-finding attempts the
/// hybrid factoring loop needed.
pub fn compare_factor(n: u64, rng: &mut Rng) -> AlgorithmResult<ComparisonReport> {
    let classical = trial_division(n)?;
    let quantum = shor_factor(n, ShorMode::Hybrid, rng)?;
    Ok(ComparisonReport {
        problem: Problem::Factor,
        instance_size: n,
        classical_steps: classical.trials.max(1),
        quantum_resource: quantum.attempts.len().max(1) as u64,
        quantum_resource_kind: "order-finding calls".into(),
        optimal_grover_iterations: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_examples() {
        let r = compare_search(1000).unwrap();
        assert_eq!((r.classical_steps, r.quantum_resource), (1000, 32));
        let r = compare_search(4).unwrap();
        assert_eq!((r.classical_steps, r.quantum_resource), (4, 2));
        let r = compare_search(1024).unwrap();
        assert_eq!((r.classical_steps, r.quantum_resource), (1024, 32));
        assert_eq!(r.optimal_grover_iterations, Some(25));
        assert!(compare_search(1).is_err());
    }

    #[test]
    fn quantum_never_exceeds_classical() {
        for n in 2..5000 {
            let r = compare_search(n).unwrap();
            assert!(r.quantum_resource >= 1 && r.quantum_resource <= r.classical_steps);
        }
        let r = compare_search(1 << 20).unwrap();
        let ratio = r.classical_steps as f64 / r.quantum_resource as f64;
        assert!((ratio - 1024.0).abs() < 1e-9);
    }

    #[test]
    fn factor_comparison() {
        let r = compare_factor(143, &mut Rng::seeded(2)).unwrap();
        assert_eq!(r.problem, Problem::Factor);
        assert_eq!(r.classical_steps, 6);
        assert!(r.quantum_resource >= 1);
    }
}
