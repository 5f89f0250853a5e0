//! Jordan–Wigner reference for Majorana strings: dense matrices for small
//! systems and a state-vector action for larger ones.
#![allow(dead_code)]

use floquet_majorana::majorana::MajoranaString;
use floquet_majorana::numkernel::{pauli, ComplexMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn i_pow(k: u8) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
        [(k % 4) as usize]
}

/// `γ_{2k} = Z⊗…⊗Z⊗X_k⊗1…`, `γ_{2k+1} = Z⊗…⊗Z⊗Y_k⊗1…`; qubit 0 is the leftmost factor.
pub fn jw_gammas(n_modes: usize) -> Vec<ComplexMatrix> {
    assert!(n_modes.is_multiple_of(2));
    let qubits = n_modes / 2;
    (0..n_modes)
        .map(|j| {
            let k = j / 2;
            (0..qubits).fold(ComplexMatrix::identity(1), |acc, q| {
                let f = if q < k {
                    pauli::sigma_z()
                } else if q == k {
                    if j % 2 == 0 {
                        pauli::sigma_x()
                    } else {
                        pauli::sigma_y()
                    }
                } else {
                    pauli::id2()
                };
                acc.kron(&f)
            })
        })
        .collect()
}

pub fn dense_string(gammas: &[ComplexMatrix], s: &MajoranaString) -> ComplexMatrix {
    let dim = gammas[0].rows();
    let mut m = ComplexMatrix::identity(dim).scale(i_pow(s.phase_exp()));
    for i in s.indices() {
        m = &m * &gammas[i];
    }
    m
}

pub fn matrices_equal(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    (a - b).max_abs() < 1e-12
}

/// `γ_j |v⟩` for `n_modes` Majoranas without forming matrices. Qubit `q` is bit `Q−1−q`.
pub fn apply_gamma(n_modes: usize, j: usize, v: &[Complex64]) -> Vec<Complex64> {
    let qubits = n_modes / 2;
    let k = j / 2;
    let bit = 1usize << (qubits - 1 - k);
    let higher: usize = (0..k).map(|q| 1usize << (qubits - 1 - q)).sum();
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (b, &a) in v.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut c = a;
        if (b & higher).count_ones() % 2 == 1 {
            c = -c;
        }
        if j % 2 == 1 {
            // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
            c *= if b & bit == 0 { Complex64::new(0.0, 1.0) } else { Complex64::new(0.0, -1.0) };
        }
        out[b ^ bit] += c;
    }
    out
}

pub fn apply_string(s: &MajoranaString, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    for &i in s.indices().iter().rev() {
        out = apply_gamma(s.n_modes(), i, &out);
    }
    let p = i_pow(s.phase_exp());
    out.iter_mut().for_each(|x| *x *= p);
    out
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn normalize(v: &mut [Complex64]) -> f64 {
    let n = inner(v, v).re.sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

pub fn expectation(s: &MajoranaString, v: &[Complex64]) -> Complex64 {
    inner(v, &apply_string(s, v))
}

/// `(1 + outcome·s)/2 |v⟩`, normalized, with the outcome probability.
pub fn project(s: &MajoranaString, outcome: i8, v: &[Complex64]) -> (f64, Vec<Complex64>) {
    let sv = apply_string(s, v);
    let sign = f64::from(outcome);
    let mut out: Vec<Complex64> = v.iter().zip(&sv).map(|(a, b)| 0.5 * (a + sign * b)).collect();
    let p = inner(&out, &out).re;
    if p > 1e-24 {
        normalize(&mut out);
    }
    (p, out)
}

/// The unique joint `+1` eigenvector of a maximal set of commuting generators.
pub fn stabilized_state(n_modes: usize, generators: &[MajoranaString], seed: u64) -> Vec<Complex64> {
    let dim = 1usize << (n_modes / 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> =
        (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    normalize(&mut v);
    for g in generators {
        let (p, next) = project(g, 1, &v);
        assert!(p > 1e-8, "random start vector orthogonal to the code space");
        v = next;
    }
    v
}

pub fn random_string(rng: &mut impl Rng, n_modes: usize) -> MajoranaString {
    let support = rng.gen::<u64>() & ((1u64 << n_modes) - 1);
    MajoranaString::from_bits(n_modes, support, rng.gen_range(0..4)).expect("in range")
}

/// Random Hermitian string of even, non-zero weight.
pub fn random_even_hermitian(rng: &mut impl Rng, n_modes: usize) -> MajoranaString {
    loop {
        let s = random_string(rng, n_modes);
        if s.weight() > 0 && s.weight().is_multiple_of(2) {
            return s.canonical_hermitian();
        }
    }
}

/// One randomized comparison on `n_modes ≤ 8`: a product, a commutation test,
/// Hermiticity, and a four-step measurement sequence with expectation checks.
pub fn oracle_trial(rng: &mut ChaCha8Rng, gammas: &[Vec<ComplexMatrix>]) -> Result<(), String> {
    use floquet_majorana::majorana::{hermitian_parity, RngOutcomes, StabilizerState};

    let n_modes = 2 * rng.gen_range(1..=4usize);
    let g = &gammas[n_modes / 2 - 1];
    let a = random_string(rng, n_modes);
    let b = random_string(rng, n_modes);
    let (da, db) = (dense_string(g, &a), dense_string(g, &b));
    let ab = a.mul(&b).map_err(|e| e.to_string())?;
    if !matrices_equal(&dense_string(g, &ab), &(&da * &db)) {
        return Err(format!("product {a} · {b} = {ab}"));
    }
    let dense_commute = matrices_equal(&(&da * &db), &(&db * &da));
    if a.commutes(&b).map_err(|e| e.to_string())? != dense_commute {
        return Err(format!("commutation of {a} and {b}"));
    }
    if a.is_hermitian() != matrices_equal(&da, &da.adjoint()) {
        return Err(format!("hermiticity of {a}"));
    }
    if !matrices_equal(&dense_string(g, &a.adjoint()), &da.adjoint()) {
        return Err(format!("adjoint of {a}"));
    }

    let mut gens = Vec::new();
    for k in 0..n_modes / 2 {
        let p = hermitian_parity(n_modes, &[2 * k, 2 * k + 1]).map_err(|e| e.to_string())?;
        gens.push(if rng.gen_bool(0.5) { p } else { p.negated() });
    }
    let mut state = StabilizerState::new(n_modes, gens.clone(), vec![]).map_err(|e| e.to_string())?;
    let mut psi = stabilized_state(n_modes, &gens, rng.gen());
    let mut source = RngOutcomes(ChaCha8Rng::seed_from_u64(rng.gen()));
    for _ in 0..4 {
        let m = random_even_hermitian(rng, n_modes);
        let (meas, next) = state.measure(&m, &mut source).map_err(|e| e.to_string())?;
        let (p, projected) = project(&m, meas.outcome, &psi);
        let expected = if meas.random { 0.5 } else { 1.0 };
        if (p - expected).abs() > 1e-9 {
            return Err(format!("measuring {m}: outcome {} has probability {p}", meas.outcome));
        }
        state = next;
        psi = projected;
        for s in state.generators() {
            if (expectation(s, &psi) - 1.0).norm() > 1e-9 {
                return Err(format!("generator {s} not stabilizing after measuring {m}"));
            }
        }
        let probe = random_even_hermitian(rng, n_modes);
        let engine = state.expectation(&probe).map_err(|e| e.to_string())?;
        let dense = expectation(&probe, &psi);
        if (dense - f64::from(engine)).norm() > 1e-9 {
            return Err(format!("expectation of {probe}: engine {engine}, dense {dense}"));
        }
    }
    Ok(())
}
