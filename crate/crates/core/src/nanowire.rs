//! Proximitized spinful nanowire with Rashba coupling and a Zeeman field,
//! and its projection onto the lower helical band as an effective Kitaev chain.
//!
//! Nambu-spin basis `(c↑, c↓, c↑†, c↓†)`. Spin-orbit acts along z, the
//! Zeeman field along x, and the s-wave pairing is `Δ_s iσy`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::floquet_model::KitaevParams;
use crate::numkernel::{hermitian_eig, ComplexMatrix, LinalgError, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NanowireError {
    #[error("α sin k and E_Z both vanish; the helical basis is undefined")]
    DegeneratePoint,
    #[error("invalid nanowire parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NanowireParams {
    pub mu: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub alpha: f64,
    #[serde(rename = "E_Z")]
    pub e_z: f64,
    #[serde(rename = "Delta_s")]
    pub delta_s: f64,
}

impl NanowireParams {
    pub fn validate(&self) -> Result<(), NanowireError> {
        let all = [self.mu, self.j, self.alpha, self.e_z, self.delta_s];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(NanowireError::InvalidParams("non-finite value".into()));
        }
        if self.e_z < 0.0 || self.delta_s < 0.0 {
            return Err(NanowireError::InvalidParams("E_Z and Delta_s must be non-negative".into()));
        }
        Ok(())
    }

    pub fn with_zeeman(&self, e_z: f64) -> Self {
        Self { e_z, ..*self }
    }
}

fn spin_orbit_radius(alpha: f64, e_z: f64, k: f64) -> f64 {
    (2.0 * alpha * k.sin()).hypot(e_z)
}

/// 4×4 BdG Bloch Hamiltonian.
pub fn spinful_bloch(p: &NanowireParams, k: f64) -> ComplexMatrix {
    let xi = p.mu - 2.0 * p.j * k.cos();
    let so = 2.0 * p.alpha * k.sin();
    let r = |x: f64| Complex64::new(x, 0.0);
    let mut h = ComplexMatrix::zeros(4, 4);
    h[(0, 0)] = r(xi + so);
    h[(1, 1)] = r(xi - so);
    h[(0, 1)] = r(p.e_z);
    h[(1, 0)] = r(p.e_z);
    h[(2, 2)] = r(-xi + so);
    h[(3, 3)] = r(-xi - so);
    h[(2, 3)] = r(-p.e_z);
    h[(3, 2)] = r(-p.e_z);
    h[(0, 3)] = r(p.delta_s);
    h[(3, 0)] = r(p.delta_s);
    h[(1, 2)] = r(-p.delta_s);
    h[(2, 1)] = r(-p.delta_s);
    h
}

/// `‖τx H(k)* τx + H(−k)‖_max`.
pub fn phs_residual(p: &NanowireParams, k: f64) -> f64 {
    let tau_x = ComplexMatrix::from_fn(4, 4, |i, j| {
        if (i + 2) % 4 == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let lhs = &(&tau_x * &spinful_bloch(p, k).conj()) * &tau_x;
    (&lhs + &spinful_bloch(p, -k)).max_abs()
}

/// `(C₊, C₋)` of the helical rotation at momentum `k`.
pub fn helical_coefficients(alpha: f64, e_z: f64, k: f64) -> Result<(f64, f64), NanowireError> {
    let r = spin_orbit_radius(alpha, e_z, k);
    if r == 0.0 {
        return Err(NanowireError::DegeneratePoint);
    }
    let x = alpha * k.sin() / r;
    Ok(((0.5 + x).max(0.0).sqrt(), (0.5 - x).max(0.0).sqrt()))
}

/// Effective s-wave and p-wave pairings `(Δ⁽ˢ⁾, Δ⁽ᴾ⁾)` in the helical basis.
pub fn effective_pairings(delta_s: f64, alpha: f64, e_z: f64, k: f64) -> Result<(f64, f64), NanowireError> {
    let r = spin_orbit_radius(alpha, e_z, k);
    if r == 0.0 {
        return Err(NanowireError::DegeneratePoint);
    }
    Ok((delta_s * e_z / r, delta_s * alpha / r))
}

/// Lower-band Kitaev parameters `(μ − E_Z, J, Δ_s α/E_Z)` and the validity ratio `max(α, Δ_s)/E_Z`.
pub fn effective_kitaev(p: &NanowireParams) -> Result<(KitaevParams, f64), NanowireError> {
    p.validate()?;
    if p.e_z <= 0.0 {
        return Err(NanowireError::DegeneratePoint);
    }
    let kitaev = KitaevParams::new(p.mu - p.e_z, p.j, p.delta_s * p.alpha / p.e_z);
    Ok((kitaev, p.alpha.max(p.delta_s) / p.e_z))
}

/// Positive quasiparticle energy of the projected lower-band 2×2 BdG at `k`.
pub fn effective_energy(p: &NanowireParams, k: f64) -> Result<f64, NanowireError> {
    let r = spin_orbit_radius(p.alpha, p.e_z, k);
    let (_, dp) = effective_pairings(p.delta_s, p.alpha, p.e_z, k)?;
    let xi = p.mu - 2.0 * p.j * k.cos() - r;
    Ok(xi.hypot(2.0 * dp * k.sin()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub k: f64,
    /// The two smallest `|E|` of the full 4×4 problem, ascending.
    pub e1: f64,
    pub e2: f64,
    /// The projected band `±E_eff`, reported as magnitudes.
    pub e_eff1: f64,
    pub e_eff2: f64,
    pub abs_error: f64,
}

pub fn spectrum_comparison(p: &NanowireParams, kgrid: &[f64]) -> Result<Vec<SpectrumRow>, NanowireError> {
    p.validate()?;
    kgrid
        .par_iter()
        .map(|&k| {
            let eig = hermitian_eig(&spinful_bloch(p, k), DEFAULT_TOL)?;
            let mut mags: Vec<f64> = eig.values.iter().map(|e| e.abs()).collect();
            mags.sort_by(f64::total_cmp);
            let ee = effective_energy(p, k)?;
            Ok(SpectrumRow {
                k,
                e1: mags[0],
                e2: mags[1],
                e_eff1: ee,
                e_eff2: ee,
                abs_error: (mags[0] - ee).abs().max((mags[1] - ee).abs()),
            })
        })
        .collect()
}

/// Largest deviation between the low-energy full spectrum and the projected band over `kgrid`.
pub fn projection_error(p: &NanowireParams, kgrid: &[f64]) -> Result<f64, NanowireError> {
    Ok(spectrum_comparison(p, kgrid)?.iter().map(|r| r.abs_error).fold(0.0, f64::max))
}

/// `min_k E_eff(k)` over `kgrid`.
pub fn effective_gap(p: &NanowireParams, kgrid: &[f64]) -> Result<f64, NanowireError> {
    kgrid.iter().map(|&k| effective_energy(p, k)).try_fold(f64::INFINITY, |acc, e| Ok(acc.min(e?)))
}

/// `n` evenly spaced momenta covering `[−π, π]`.
pub fn momentum_grid(n: usize) -> Vec<f64> {
    use std::f64::consts::PI;
    if n < 2 {
        return vec![0.0; n];
    }
    (0..n).map(|i| -PI + 2.0 * PI * i as f64 / (n - 1) as f64).collect()
}
