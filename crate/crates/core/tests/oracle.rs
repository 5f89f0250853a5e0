mod common;

use common::*;
use floquet_majorana::majorana::{
    enumerate_branches, gate_measurements, initial_gate_state, steane_code, syndrome, target_generators,
    tetron_layout_with, MajoranaString,
};
use floquet_majorana::numkernel::ComplexMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn jordan_wigner_gammas_are_a_clifford_algebra() {
    let g = jw_gammas(6);
    let two = ComplexMatrix::identity(8).scale(Complex64::new(2.0, 0.0));
    for i in 0..6 {
        for j in 0..6 {
            let anti = &(&g[i] * &g[j]) + &(&g[j] * &g[i]);
            let want = if i == j { two.clone() } else { ComplexMatrix::zeros(8, 8) };
            assert!(matrices_equal(&anti, &want), "{i} {j}");
        }
    }
}

#[test]
fn vector_action_matches_dense_matrices() {
    let n = 8;
    let g = jw_gammas(n);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let s = random_string(&mut rng, n);
        let d = dense_string(&g, &s);
        let v: Vec<Complex64> = (0..16).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let want = d.apply(&v);
        let got = apply_string(&s, &v);
        assert!(want.iter().zip(&got).all(|(a, b)| (a - b).norm() < 1e-12), "{s}");
    }
}

#[test]
fn randomized_engine_agrees_with_dense_oracle() {
    let gammas: Vec<_> = (1..=4).map(|q| jw_gammas(2 * q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..1000 {
        if let Err(e) = oracle_trial(&mut rng, &gammas) {
            panic!("trial {t}: {e}");
        }
    }
}

#[test]
fn steane_syndromes_from_dense_anticommutation() {
    let code = steane_code();
    let g = jw_gammas(code.n_modes);
    let stabs: Vec<ComplexMatrix> = code.stabilizers.iter().map(|s| dense_string(&g, s)).collect();
    for a in &stabs {
        for b in &stabs {
            assert!(matrices_equal(&(a * b), &(b * a)));
        }
    }
    for id in 0..code.n_modes {
        let e = dense_string(&g, &code.single(id));
        let dense: Vec<bool> = stabs.iter().map(|s| !matrices_equal(&(s * &e), &(&e * s))).collect();
        assert_eq!(dense, syndrome(&code, &code.single(id)).bits.to_vec(), "mode {id}");
    }
}

/// Runs each branch on a state vector and compares with the ideal output `(P ⊗ 1)|Φ⟩`.
fn gate_against_state_vector(mzm_per_corner: usize) {
    let layout = tetron_layout_with(mzm_per_corner).unwrap();
    let n = layout.n_modes;
    let initial = initial_gate_state(&layout).unwrap();
    let psi0 = stabilized_state(n, initial.generators(), 1);
    let targets: Vec<MajoranaString> = target_generators(&layout).unwrap().into_iter().map(|(_, t)| t).collect();
    let ideal = stabilized_state(n, &targets, 2);
    let measured = gate_measurements(&layout).unwrap();
    let branches = enumerate_branches(&layout).unwrap();
    assert_eq!(branches.len(), 16);
    for (t, check) in &branches {
        assert!(check.passed());
        let mut psi = psi0.clone();
        for (m, &o) in measured.iter().zip(&t.outcomes) {
            let (p, next) = project(m, o, &psi);
            assert!((p - 0.5).abs() < 1e-9, "outcome probability {p}");
            psi = next;
        }
        psi = apply_string(&t.correction, &psi);
        let fidelity = inner(&ideal, &psi).norm();
        assert!((fidelity - 1.0).abs() < 1e-9, "branch {:?}: fidelity {fidelity}", t.outcomes);
        let tx = t.final_state.tracked_op("sigma_x1").unwrap();
        let contract = tx.mul(&layout.rotated_x1().adjoint()).unwrap();
        assert!((expectation(&contract, &psi) - 1.0).norm() < 1e-9);
    }
}

#[test]
fn phase_gate_single_mzm_corners_state_vector() {
    gate_against_state_vector(1);
}

#[test]
fn phase_gate_three_mzm_corners_state_vector() {
    gate_against_state_vector(3);
}
