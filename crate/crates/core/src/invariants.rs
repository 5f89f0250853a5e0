//! Winding numbers ν₀, νπ of the canonical-basis blocks, their closed forms
//! in the fine-tuned limit, and parameter sweeps.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::floquet_model::{floquet_blocks, CouplingLaw, DriveProtocol, KitaevParams, ModelError};

/// Smallest |B| or |D| accepted before the winding is declared undefined.
pub const GAP_TOL: f64 = 1e-6;
/// Refinement cap for the momentum grid.
pub const MAX_GRID: usize = 1 << 20;
pub const MIN_GRID: usize = 64;

/// Quasienergy sector of a gap or edge mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Zero,
    Pi,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Zero => "zero",
            Sector::Pi => "pi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InvariantError {
    #[error("quasienergy gap closes in the {0} sector")]
    GapClosed(Sector),
    #[error("winding did not stabilize below {MAX_GRID} grid points")]
    NonConvergent,
    #[error("grid of {0} points is below the minimum of {MIN_GRID}")]
    GridTooSmall(usize),
    #[error("m = {0} lies on a topological transition")]
    OnTransition(f64),
    #[error("closed forms need m > 0, got {0}")]
    NonPositiveRatio(f64),
    #[error("invalid sweep range: {0}")]
    InvalidSweep(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindingPair {
    pub nu0: i64,
    pub nupi: i64,
    /// Gap witnesses; NaN for closed-form results.
    pub min_abs_b: f64,
    pub min_abs_d: f64,
}

impl WindingPair {
    pub fn pair(&self) -> (i64, i64) {
        (self.nu0, self.nupi)
    }

    pub fn get(&self, sector: Sector) -> i64 {
        match sector {
            Sector::Zero => self.nu0,
            Sector::Pi => self.nupi,
        }
    }
}

struct GridWinding {
    raw_b: f64,
    raw_d: f64,
    min_b: f64,
    min_d: f64,
    max_step: f64,
}

fn principal(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

fn wind_on_grid(d: &DriveProtocol, grid: usize) -> GridWinding {
    let h = 2.0 * PI / grid as f64;
    let k_at = |j: usize| -PI + h * (j + 1) as f64;
    let first = floquet_blocks(d, k_at(grid - 1));
    let (mut prev_b, mut prev_d) = (first[1].arg(), first[3].arg());
    let mut out = GridWinding { raw_b: 0.0, raw_d: 0.0, min_b: f64::INFINITY, min_d: f64::INFINITY, max_step: 0.0 };
    for j in 0..grid {
        let blocks = floquet_blocks(d, k_at(j));
        let (b, dd) = (blocks[1], blocks[3]);
        out.min_b = out.min_b.min(b.norm());
        out.min_d = out.min_d.min(dd.norm());
        let (ab, ad) = (b.arg(), dd.arg());
        let step_b = principal(ab - prev_b);
        let step_d = principal(ad - prev_d);
        out.raw_b += step_b;
        out.raw_d += step_d;
        out.max_step = out.max_step.max(step_b.abs()).max(step_d.abs());
        prev_b = ab;
        prev_d = ad;
    }
    out.raw_b /= 2.0 * PI;
    out.raw_d /= 2.0 * PI;
    out
}

fn settle(w: &GridWinding) -> Result<Option<WindingPair>, InvariantError> {
    if w.min_b < GAP_TOL {
        return Err(InvariantError::GapClosed(Sector::Zero));
    }
    if w.min_d < GAP_TOL {
        return Err(InvariantError::GapClosed(Sector::Pi));
    }
    if w.max_step >= FRAC_PI_2 {
        return Ok(None);
    }
    let nu0 = w.raw_b.round();
    let wd = w.raw_d.round();
    if (w.raw_b - nu0).abs() > 1e-6 || (w.raw_d - wd).abs() > 1e-6 {
        return Ok(None);
    }
    // D winds opposite to the π-mode count in this gauge
    Ok(Some(WindingPair { nu0: nu0 as i64, nupi: -(wd as i64), min_abs_b: w.min_b, min_abs_d: w.min_d }))
}

/// ν₀ = wind(B), νπ = −wind(D) on a uniform k-grid over (−π, π].
///
/// The grid is doubled until every phase increment is below π/2 and the
/// result agrees with the next doubling.
pub fn winding_numbers(d: &DriveProtocol, grid: usize) -> Result<WindingPair, InvariantError> {
    if grid < MIN_GRID {
        return Err(InvariantError::GridTooSmall(grid));
    }
    let mut g = grid;
    let mut candidate: Option<WindingPair> = None;
    while g <= MAX_GRID {
        let here = settle(&wind_on_grid(d, g))?;
        match (candidate, here) {
            (Some(prev), Some(now)) if prev.pair() == now.pair() => {
                return Ok(WindingPair {
                    min_abs_b: prev.min_abs_b.min(now.min_abs_b),
                    min_abs_d: prev.min_abs_d.min(now.min_abs_d),
                    ..prev
                });
            }
            (_, now) => candidate = now,
        }
        g *= 2;
    }
    Err(InvariantError::NonConvergent)
}

/// Fine-tuned limit μ₁ = 2J₁ = 2Δ₁ under the fig1 law:
/// ν₀ = n for nπ < m < (n+1)π, νπ = (n+1)/2 for odd n with nπ/2 < m < nπ/2 + π.
pub fn closed_form_invariants(m: f64) -> Result<WindingPair, InvariantError> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(InvariantError::NonPositiveRatio(m));
    }
    let q = m / FRAC_PI_2;
    if (q - q.round()).abs() * FRAC_PI_2 < 1e-9 {
        return Err(InvariantError::OnTransition(m));
    }
    let q = q.floor() as i64;
    let nu0 = (m / PI).floor() as i64;
    let n = if q % 2 == 1 { q } else { q - 1 };
    Ok(WindingPair { nu0, nupi: (n + 1) / 2, min_abs_b: f64::NAN, min_abs_d: f64::NAN })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Ok,
    GapClosedZero,
    GapClosedPi,
    NonConvergent,
}

impl SweepStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepStatus::Ok => "ok",
            SweepStatus::GapClosedZero => "gap_closed_zero",
            SweepStatus::GapClosedPi => "gap_closed_pi",
            SweepStatus::NonConvergent => "non_convergent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub m: f64,
    pub winding: Option<WindingPair>,
    pub status: SweepStatus,
}

/// Sample points `m_from + j·m_step` up to `m_to` inclusive.
pub fn sweep_points(m_from: f64, m_to: f64, m_step: f64) -> Result<Vec<f64>, InvariantError> {
    if !(m_from.is_finite() && m_to.is_finite() && m_step.is_finite()) {
        return Err(InvariantError::InvalidSweep("non-finite bound".into()));
    }
    if !(m_from < m_to) {
        return Err(InvariantError::InvalidSweep(format!("m_from {m_from} must be below m_to {m_to}")));
    }
    if !(m_step > 0.0) {
        return Err(InvariantError::InvalidSweep(format!("m_step {m_step} must be positive")));
    }
    let count = ((m_to - m_from) / m_step * (1.0 + 1e-12)).floor() as usize + 1;
    Ok((0..count).map(|j| m_from + j as f64 * m_step).collect())
}

fn row_for(base: KitaevParams, law: CouplingLaw, m: f64, grid: usize) -> Result<SweepRow, InvariantError> {
    let d = DriveProtocol::with_law(base, law, m)?;
    let (winding, status) = match winding_numbers(&d, grid) {
        Ok(w) => (Some(w), SweepStatus::Ok),
        Err(InvariantError::GapClosed(Sector::Zero)) => (None, SweepStatus::GapClosedZero),
        Err(InvariantError::GapClosed(Sector::Pi)) => (None, SweepStatus::GapClosedPi),
        Err(InvariantError::NonConvergent) => (None, SweepStatus::NonConvergent),
        Err(e) => return Err(e),
    };
    Ok(SweepRow { m, winding, status })
}

/// Winding numbers along `m`, evaluated in parallel, rows in ascending `m`.
pub fn sweep_invariants(
    base: KitaevParams,
    law: CouplingLaw,
    m_from: f64,
    m_to: f64,
    m_step: f64,
    grid: usize,
) -> Result<Vec<SweepRow>, InvariantError> {
    if grid < MIN_GRID {
        return Err(InvariantError::GridTooSmall(grid));
    }
    let points = sweep_points(m_from, m_to, m_step)?;
    points.into_par_iter().map(|m| row_for(base, law, m, grid)).collect()
}

/// One sector's invariant at `m`; `None` when that sector's gap is closed.
/// A gap closing in the other sector is stepped around by small offsets.
fn sector_value(
    base: KitaevParams,
    law: CouplingLaw,
    m: f64,
    sector: Sector,
    grid: usize,
    resolution: f64,
) -> Result<Option<i64>, InvariantError> {
    let mut last = InvariantError::NonConvergent;
    for offset in [0.0, 0.05, -0.05, 0.1, -0.1] {
        let d = DriveProtocol::with_law(base, law, m + offset * resolution)?;
        match winding_numbers(&d, grid) {
            Ok(w) => return Ok(Some(w.get(sector))),
            Err(InvariantError::GapClosed(s)) if s == sector => return Ok(None),
            Err(e @ (InvariantError::GapClosed(_) | InvariantError::NonConvergent)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// A change of ν₀ or νπ between neighbouring sweep rows, bisected in `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jump {
    pub sector: Sector,
    pub m: f64,
    pub from: i64,
    pub to: i64,
}

/// Locates every change in either invariant between consecutive valid rows,
/// bisecting until the bracket is narrower than `resolution`.
pub fn locate_jumps(
    base: KitaevParams,
    law: CouplingLaw,
    rows: &[SweepRow],
    grid: usize,
    resolution: f64,
) -> Result<Vec<Jump>, InvariantError> {
    let valid: Vec<(f64, WindingPair)> = rows.iter().filter_map(|r| r.winding.map(|w| (r.m, w))).collect();
    let mut brackets = Vec::new();
    for pair in valid.windows(2) {
        let (ma, wa) = pair[0];
        let (mb, wb) = pair[1];
        for sector in [Sector::Zero, Sector::Pi] {
            if wa.get(sector) != wb.get(sector) {
                brackets.push((sector, ma, mb, wa.get(sector), wb.get(sector)));
            }
        }
    }
    brackets
        .into_par_iter()
        .map(|(sector, ma, mb, from, to)| {
            let (mut lo, mut hi) = (ma, mb);
            while hi - lo > resolution {
                let mid = 0.5 * (lo + hi);
                match sector_value(base, law, mid, sector, grid, resolution)? {
                    Some(v) if v == from => lo = mid,
                    Some(_) => hi = mid,
                    // this sector's gap closes only at the transition itself
                    None => {
                        lo = mid;
                        hi = mid;
                    }
                }
            }
            Ok(Jump { sector, m: 0.5 * (lo + hi), from, to })
        })
        .collect()
}
