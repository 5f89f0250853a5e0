//! Parity-dependent four-terminal conductance and stabilizer readout through it.

use serde::{Deserialize, Serialize};

use crate::majorana::{CodeDefinition, OutcomeSource, StabilizerState, StateError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReadoutError {
    #[error("a3 = 0: the conductance carries no four-Majorana signal")]
    NoFourParitySignal,
    #[error("parities must be ±1")]
    InvalidParity,
    #[error("stabilizer index {index} out of range ({count} stabilizers)")]
    NoSuchStabilizer { index: usize, count: usize },
    #[error("non-finite conductance coefficient")]
    NonFinite,
    #[error(transparent)]
    State(#[from] StateError),
}

/// Conductance coefficients and phase offsets. Fluxes are in radians.
///
/// The defaults are placeholders for demonstration, not derived from any device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConductanceParams {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub phi0: f64,
    pub phipi: f64,
}

impl Default for ConductanceParams {
    fn default() -> Self {
        Self { a0: 1.0, a1: 0.1, a2: 0.1, a3: 0.3, phi0: 0.4, phipi: 0.4 }
    }
}

impl ConductanceParams {
    pub fn validate(&self) -> Result<(), ReadoutError> {
        let all = [self.a0, self.a1, self.a2, self.a3, self.phi0, self.phipi];
        if all.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(ReadoutError::NonFinite)
        }
    }

    /// Fluxes at which both two-Majorana terms vanish.
    pub fn tuned_fluxes(&self) -> (f64, f64) {
        (self.phi0, self.phipi)
    }
}

/// `p0 = ⟨iγ0Lγ0R⟩`, `ppi = ⟨iγπLγπR⟩`, `p4` the four-Majorana parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityAssignment {
    pub p0: i8,
    pub ppi: i8,
    pub p4: i8,
}

impl ParityAssignment {
    pub fn new(p0: i8, ppi: i8, p4: i8) -> Result<Self, ReadoutError> {
        if [p0, ppi, p4].iter().all(|p| p.abs() == 1) {
            Ok(Self { p0, ppi, p4 })
        } else {
            Err(ReadoutError::InvalidParity)
        }
    }

    /// Four-Majorana parity taken as the product `(iγ0Lγ0R)(iγπLγπR)` of the two pair parities.
    pub fn from_pairs(p0: i8, ppi: i8) -> Result<Self, ReadoutError> {
        Self::new(p0, ppi, p0 * ppi)
    }

    pub fn all() -> [Self; 4] {
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(a, b)| Self { p0: a, ppi: b, p4: a * b })
    }
}

/// Time-averaged conductance `Ḡ`.
pub fn mean_conductance(c: &ConductanceParams, flux0: f64, fluxpi: f64, p: &ParityAssignment) -> f64 {
    let d0 = flux0 - c.phi0;
    let dpi = fluxpi - c.phipi;
    c.a0 + c.a1 * f64::from(p.p0) * d0.sin()
        + c.a2 * f64::from(p.ppi) * dpi.sin()
        + c.a3 * f64::from(p.p4) * (dpi - d0).cos()
}

/// Four-parity signal over the residual two-parity terms; infinite at perfect tuning.
pub fn discriminability(c: &ConductanceParams, flux0: f64, fluxpi: f64) -> f64 {
    let d0 = flux0 - c.phi0;
    let dpi = fluxpi - c.phipi;
    let signal = (c.a3 * (dpi - d0).cos()).abs();
    let residual = (c.a1 * d0.sin()).abs() + (c.a2 * dpi.sin()).abs();
    if signal == 0.0 {
        0.0
    } else if residual == 0.0 {
        f64::INFINITY
    } else {
        signal / (residual + f64::EPSILON)
    }
}

#[derive(Debug, Clone)]
pub struct Readout {
    pub outcome: i8,
    pub conductance: f64,
    pub state: StabilizerState,
}

/// Measures stabilizer `index` of `code` and reports the conductance at tuned fluxes.
pub fn stabilizer_readout(
    code: &CodeDefinition,
    state: &StabilizerState,
    index: usize,
    c: &ConductanceParams,
    source: &mut dyn OutcomeSource,
) -> Result<Readout, ReadoutError> {
    if c.a3 == 0.0 {
        return Err(ReadoutError::NoFourParitySignal);
    }
    let s =
        code.stabilizers.get(index).ok_or(ReadoutError::NoSuchStabilizer { index, count: code.stabilizers.len() })?;
    let (m, state) = state.measure(s, source)?;
    Ok(Readout { outcome: m.outcome, conductance: c.a0 + c.a3 * f64::from(m.outcome), state })
}
