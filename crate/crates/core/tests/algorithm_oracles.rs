mod common;

use common::dense;
use qana_core::algorithms::{
    grover_search, optimal_grover_iterations, order_find_bruteforce, qft, qft_circuit, shor_factor, ShorMode,
};
use qana_core::{Rng, StateVector64};

fn closed_form(padded: u64, r: u64) -> f64 {
    let theta = (1.0 / (padded as f64).sqrt()).asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

#[test]
fn grover_trace_monotone_and_closed_form() {
    for k in 2..=10u32 {
        let padded = 1u64 << k;
        let r = optimal_grover_iterations(padded).unwrap();
        let marks: Vec<u64> = if padded <= 64 {
            (0..padded).collect()
        } else {
            vec![0, 1, padded / 3, padded - 1]
        };
        for marked in marks {
            let rep = grover_search(padded, marked, None).unwrap();
            let mut prev = 1.0 / (padded as f64).sqrt();
            for &a in &rep.marked_amplitude_trace {
                assert!(a > prev, "N'={padded} marked={marked}");
                prev = a;
            }
            assert!((rep.final_success_probability - closed_form(padded, r)).abs() < 1e-9);
        }
    }
}

#[test]
fn grover_closed_form_for_padded_sizes() {
    for n in [3u64, 5, 100, 1000] {
        let rep = grover_search(n, n - 1, None).unwrap();
        assert!((rep.final_success_probability - closed_form(rep.padded_size, rep.iterations_run)).abs() < 1e-9);
    }
}

#[test]
fn qft_matches_dft_matrix() {
    for n in 1..=5usize {
        let dim = 1 << n;
        let dft = dense::dft_matrix(dim);
        let qubits: Vec<usize> = (0..n).collect();
        // Column k of the circuit unitary is qft(|k⟩).
        for k in 0..dim {
            let out = qft(&StateVector64::basis_state(n, k).unwrap(), &qubits).unwrap();
            for (j, a) in out.amplitudes().iter().enumerate() {
                assert!((a - dft[j][k]).norm() < 1e-9, "n={n} j={j} k={k}");
            }
        }
        // And the gate list multiplied out densely agrees as well.
        let gates: Vec<_> = qft_circuit(n, &qubits, false)
            .unwrap()
            .instructions
            .iter()
            .filter_map(|i| i.gate().cloned())
            .collect();
        let m = dense::circuit_matrix(n, &gates);
        for j in 0..dim {
            for k in 0..dim {
                assert!((m[j][k] - dft[j][k]).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn shor_full_circuit_orders_verified() {
    for (n, seeds) in [(15u64, 0..10u64), (21, 0..3)] {
        for seed in seeds {
            let rep = shor_factor(n, ShorMode::FullCircuit, &mut Rng::seeded(seed)).unwrap();
            let (p, q) = rep.factors.expect("factors found");
            assert_eq!(p * q, n);
            for att in rep.attempts.iter().filter(|a| a.accepted) {
                if let Some(r) = att.order_r {
                    let true_order = order_find_bruteforce(att.a, n).unwrap();
                    assert_eq!(r % true_order, 0);
                    if n == 15 {
                        assert_eq!(r, true_order);
                    }
                }
                let (f, g) = att.factors.unwrap();
                assert_eq!(f * g, n);
            }
        }
    }
}

#[test]
fn shor_hybrid_soundness_across_moduli() {
    for n in [15u64, 21, 33, 35, 39, 51, 55, 57, 65, 77, 85, 91, 143, 187, 221, 247] {
        let rep = shor_factor(n, ShorMode::Hybrid, &mut Rng::seeded(n)).unwrap();
        let (p, q) = rep.factors.unwrap();
        assert_eq!(p * q, n);
        assert!(p > 1 && q > 1);
    }
}
