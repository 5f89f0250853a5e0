//! Open-chain quasienergy spectrum and Majorana zero/π edge modes.
//!
//! Majorana basis per site `j`: `γ_{2j} = c_j + c_j†`, `γ_{2j+1} = i(c_j − c_j†)`,
//! each normalized so that a self-conjugate Nambu vector maps to a real unit vector.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::floquet_model::{obc_floquet, DriveProtocol, ModelError};
use crate::invariants::Sector;
use crate::numkernel::{hermitian_eig, unitary_eig, ComplexMatrix, LinalgError, UnitaryEig};

pub const DEFAULT_MODE_TOL: f64 = 1e-3;
pub const MIN_SITES: usize = 10;
/// Weight fraction on one half of the chain required to call a mode localized there.
pub const SIDE_THRESHOLD: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EdgeError {
    #[error("edge-mode analysis needs at least {MIN_SITES} sites, got {0}")]
    TooSmall(usize),
    #[error("tolerance {0} must lie in (0, 0.5)")]
    InvalidTolerance(f64),
    #[error("{count} states in the {sector} window; expected an even number")]
    OddSectorCount { sector: Sector, count: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Delocalized,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Delocalized => "delocalized",
        })
    }
}

/// Eigenphases and eigenvectors of the open-chain Floquet operator.
#[derive(Debug, Clone)]
pub struct QuasiSpectrum {
    pub sites: usize,
    pub phases: Vec<f64>,
    /// Nambu-basis eigenvectors as columns, aligned with `phases`.
    pub states: ComplexMatrix,
}

impl QuasiSpectrum {
    /// Largest mismatch between the sorted phases and their negatives (mod 2π).
    pub fn pairing_residual(&self) -> f64 {
        let n = self.phases.len();
        (0..n)
            .map(|i| {
                let a = self.phases[i];
                let b = -self.phases[n - 1 - i];
                let d = (a - b).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d)
            })
            .fold(0.0, f64::max)
    }

    /// Indices of phases within `tol` of 0 (zero) or of ±π (pi).
    pub fn window(&self, sector: Sector, tol: f64) -> Vec<usize> {
        (0..self.phases.len()).filter(|&i| sector_distance(self.phases[i], sector) < tol).collect()
    }

    /// Smallest distance to 0 or π among phases outside both windows.
    pub fn bulk_gap(&self, tol: f64) -> f64 {
        self.phases
            .iter()
            .map(|&p| sector_distance(p, Sector::Zero).min(sector_distance(p, Sector::Pi)))
            .filter(|&d| d >= tol)
            .fold(f64::INFINITY, f64::min)
    }
}

fn sector_distance(phase: f64, sector: Sector) -> f64 {
    match sector {
        Sector::Zero => phase.abs(),
        Sector::Pi => PI - phase.abs(),
    }
}

/// Diagonalizes the open-chain Floquet operator on `n` sites.
pub fn quasienergy_spectrum(d: &DriveProtocol, n: usize) -> Result<QuasiSpectrum, EdgeError> {
    if n < MIN_SITES {
        return Err(EdgeError::TooSmall(n));
    }
    let u = obc_floquet(d, n)?;
    let UnitaryEig { phases, vectors } = unitary_eig(&u)?;
    Ok(QuasiSpectrum { sites: n, phases, states: vectors })
}

/// One edge mode as a real combination of the 2N Majorana operators.
#[derive(Debug, Clone, Serialize)]
pub struct MajoranaMode {
    pub sector: Sector,
    /// Weighted mean eigenphase of the spectral components.
    pub phase: f64,
    pub side: Side,
    /// Real coefficients over γ₀..γ_{2N−1}; largest entry positive.
    pub amplitudes: Vec<f64>,
    /// Squared amplitudes, summing to one.
    pub weights: Vec<f64>,
}

impl MajoranaMode {
    pub fn sites(&self) -> usize {
        self.weights.len() / 2
    }

    /// Weight farther than `cutoff` sites from the assigned edge.
    pub fn weight_beyond(&self, cutoff: usize) -> f64 {
        let n = self.sites();
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let site = i / 2;
                match self.side {
                    Side::Left => site >= cutoff,
                    Side::Right => n - 1 - site >= cutoff,
                    Side::Delocalized => true,
                }
            })
            .map(|(_, w)| w)
            .sum()
    }

    /// The mode as a Nambu vector `(u, v)`.
    pub fn nambu_vector(&self) -> Vec<Complex64> {
        from_majorana(&self.amplitudes)
    }
}

/// Nambu `(u, v)` to Majorana coefficients: `a = (u+v)/√2`, `b = i(u−v)/√2` per site.
pub fn to_majorana(nambu: &[Complex64]) -> Vec<Complex64> {
    let n = nambu.len() / 2;
    let i = Complex64::new(0.0, 1.0);
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for j in 0..n {
        let (u, v) = (nambu[j], nambu[n + j]);
        out[2 * j] = (u + v) * FRAC_1_SQRT_2;
        out[2 * j + 1] = i * (u - v) * FRAC_1_SQRT_2;
    }
    out
}

/// Inverse of [`to_majorana`] for real Majorana coefficients.
pub fn from_majorana(amplitudes: &[f64]) -> Vec<Complex64> {
    let n = amplitudes.len() / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for j in 0..n {
        let (a, b) = (amplitudes[2 * j], amplitudes[2 * j + 1]);
        out[j] = Complex64::new(a, -b) * FRAC_1_SQRT_2;
        out[n + j] = Complex64::new(a, b) * FRAC_1_SQRT_2;
    }
    out
}

/// `‖τx conj(v) − v‖_∞`.
pub fn self_conjugacy_residual(v: &[Complex64]) -> f64 {
    let n = v.len() / 2;
    (0..2 * n).map(|i| (v[(i + n) % (2 * n)].conj() - v[i]).norm()).fold(0.0, f64::max)
}

/// Real orthonormal basis of a conjugation-closed complex span, by pivoted
/// Gram–Schmidt over the real and imaginary parts.
fn real_basis(columns: &[Vec<Complex64>], rank: usize) -> Vec<Vec<f64>> {
    let mut pool: Vec<Vec<f64>> =
        columns.iter().flat_map(|c| [c.iter().map(|z| z.re).collect(), c.iter().map(|z| z.im).collect()]).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(rank);
    while basis.len() < rank {
        let (best, norm) = pool.iter().enumerate().map(|(i, v)| (i, dot(v, v).sqrt())).fold((0, -1.0), |acc, x| {
            if x.1 > acc.1 {
                x
            } else {
                acc
            }
        });
        if norm < 1e-6 {
            break;
        }
        let q: Vec<f64> = pool.swap_remove(best).iter().map(|x| x / norm).collect();
        for v in pool.iter_mut() {
            let c = dot(&q, v);
            for (x, y) in v.iter_mut().zip(&q) {
                *x -= c * y;
            }
        }
        basis.push(q);
    }
    basis
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Qᵀ diag(f) Q` for a real basis `Q` given as columns.
fn projected_diagonal(basis: &[Vec<f64>], f: impl Fn(usize) -> f64) -> ComplexMatrix {
    let k = basis.len();
    let len = basis.first().map_or(0, Vec::len);
    let weights: Vec<f64> = (0..len).map(f).collect();
    ComplexMatrix::from_fn(k, k, |a, b| {
        let s: f64 = (0..len).map(|i| basis[a][i] * weights[i] * basis[b][i]).sum();
        Complex64::new(s, 0.0)
    })
}

/// Rotates `basis` by the (real) eigenvectors of a small symmetric matrix.
fn rotate(basis: &[Vec<f64>], m: &ComplexMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>), LinalgError> {
    let eig = hermitian_eig(m, 1e-9)?;
    let len = basis.first().map_or(0, Vec::len);
    let vecs = (0..basis.len())
        .map(|c| (0..len).map(|i| basis.iter().enumerate().map(|(r, q)| q[i] * eig.vectors[(r, c)].re).sum()).collect())
        .collect();
    Ok((eig.values, vecs))
}

/// Separates the sector subspace into left and right edges, then orders each
/// edge by distance from its end.
fn split_sector(basis: Vec<Vec<f64>>, sites: usize) -> Result<Vec<(Side, Vec<f64>)>, LinalgError> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let half = sites / 2;
    let left = projected_diagonal(&basis, |i| if i / 2 < half { 1.0 } else { 0.0 });
    let (values, vecs) = rotate(&basis, &left)?;
    let mut groups: [Vec<Vec<f64>>; 3] = Default::default();
    for (v, q) in values.into_iter().zip(vecs) {
        let slot = if v >= SIDE_THRESHOLD {
            0
        } else if v <= 1.0 - SIDE_THRESHOLD {
            1
        } else {
            2
        };
        groups[slot].push(q);
    }
    let mut out = Vec::new();
    for (slot, group) in groups.into_iter().enumerate() {
        if group.is_empty() {
            continue;
        }
        let side = [Side::Left, Side::Right, Side::Delocalized][slot];
        let distance = |i: usize| {
            let site = (i / 2) as f64;
            match side {
                Side::Right => (sites - 1) as f64 - site,
                _ => site,
            }
        };
        let position = projected_diagonal(&group, distance);
        let (_, ordered) = rotate(&group, &position)?;
        out.extend(ordered.into_iter().map(|q| (side, q)));
    }
    Ok(out)
}

fn classify(weights: &[f64], sites: usize) -> Side {
    let half = sites / 2;
    let left: f64 = weights.iter().enumerate().filter(|(i, _)| i / 2 < half).map(|(_, w)| w).sum();
    let total: f64 = weights.iter().sum();
    if left >= SIDE_THRESHOLD * total {
        Side::Left
    } else if total - left >= SIDE_THRESHOLD * total {
        Side::Right
    } else {
        Side::Delocalized
    }
}

/// Real, self-conjugate Majorana modes in the zero and π windows.
///
/// Modes come sorted by sector (zero first), side (left, right, delocalized)
/// and distance from the edge.
pub fn extract_majorana_modes(s: &QuasiSpectrum, tol: f64) -> Result<Vec<MajoranaMode>, EdgeError> {
    if !(tol > 0.0 && tol < 0.5) {
        return Err(EdgeError::InvalidTolerance(tol));
    }
    let mut modes = Vec::new();
    for sector in [Sector::Zero, Sector::Pi] {
        let idx = s.window(sector, tol);
        if idx.len() % 2 == 1 {
            return Err(EdgeError::OddSectorCount { sector, count: idx.len() });
        }
        if idx.is_empty() {
            continue;
        }
        let columns: Vec<Vec<Complex64>> = idx.iter().map(|&i| to_majorana(&s.states.column(i))).collect();
        let basis = real_basis(&columns, idx.len());
        for (_, mut amp) in split_sector(basis, s.sites)? {
            let pivot = amp.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            let norm = dot(&amp, &amp).sqrt();
            let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
            amp.iter_mut().for_each(|x| *x *= sign / norm);
            let weights: Vec<f64> = amp.iter().map(|x| x * x).collect();
            let side = classify(&weights, s.sites);
            let phase = mean_phase(s, &idx, &from_majorana(&amp));
            modes.push(MajoranaMode { sector, phase, side, amplitudes: amp, weights });
        }
    }
    modes.sort_by_key(|a| (a.sector, a.side));
    Ok(modes)
}

/// `arg Σ_k |⟨v_k|ψ⟩|² e^{iφ_k}` over the window states.
fn mean_phase(s: &QuasiSpectrum, idx: &[usize], psi: &[Complex64]) -> f64 {
    let z: Complex64 = idx
        .iter()
        .map(|&k| {
            let overlap: Complex64 = (0..psi.len()).map(|r| s.states[(r, k)].conj() * psi[r]).sum();
            Complex64::from_polar(overlap.norm_sqr(), s.phases[k])
        })
        .sum();
    z.arg()
}

/// Number of zero and π modes on an `n`-site open chain.
pub fn mode_counts(d: &DriveProtocol, n: usize, tol: f64) -> Result<(usize, usize), EdgeError> {
    let s = quasienergy_spectrum(d, n)?;
    let modes = extract_majorana_modes(&s, tol)?;
    let zero = modes.iter().filter(|m| m.sector == Sector::Zero).count();
    Ok((zero, modes.len() - zero))
}
