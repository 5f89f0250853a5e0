//! Per-command JSON configs. Unknown keys are rejected and missing keys take defaults.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::edge_modes::DEFAULT_MODE_TOL;
use crate::floquet_model::{CouplingLaw, KitaevParams};
use crate::majorana::ErrorModel;
use crate::nanowire::NanowireParams;
use crate::readout::ConductanceParams;

pub(crate) fn load<T: DeserializeOwned + Default>(text: Option<&str>) -> Result<T, CliError> {
    match text {
        None => Ok(T::default()),
        Some(t) => serde_json::from_str(t).map_err(|e| CliError::Config(e.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub base: KitaevParams,
    pub law: CouplingLaw,
    /// Range of m in units of π, endpoints included.
    pub m_from_pi: f64,
    pub m_to_pi: f64,
    pub m_step_pi: f64,
    pub grid: usize,
    /// Also bisect every invariant jump to this resolution (units of π).
    pub jump_resolution_pi: Option<f64>,
    pub emit_svg: bool,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            base: KitaevParams::new(1.0, 0.55, 0.6),
            law: CouplingLaw::Fig1,
            m_from_pi: 0.05,
            m_to_pi: 7.95,
            m_step_pi: 0.05,
            grid: 256,
            jump_resolution_pi: None,
            emit_svg: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModesConfig {
    pub base: KitaevParams,
    pub law: CouplingLaw,
    /// Second Hamiltonian when `law` is `explicit`.
    pub h2: Option<KitaevParams>,
    pub m_pi: f64,
    pub sites: usize,
    pub tol: f64,
    /// Sites from the edge beyond which weight is reported as leakage.
    pub cutoff: usize,
    pub seed: u64,
}

impl Default for ModesConfig {
    fn default() -> Self {
        Self {
            base: KitaevParams::new(1.0, 0.5, 0.5),
            law: CouplingLaw::Fig1,
            h2: None,
            m_pi: 3.6,
            sites: 100,
            tol: DEFAULT_MODE_TOL,
            cutoff: 20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CodeConfig {
    pub trials: usize,
    pub error_model: ErrorModel,
    pub seed: u64,
}

impl Default for CodeConfig {
    fn default() -> Self {
        Self { trials: 10_000, error_model: ErrorModel::Single, seed: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateConfig {
    pub mzm_per_corner: usize,
    pub seed: u64,
}

impl Default for GateConfig {
    fn default() -> Self {
        Self { mzm_per_corner: 3, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NanowireConfig {
    /// `E_Z` here is ignored when `zeeman_multiples` is non-empty.
    pub wire: NanowireParams,
    /// Zeeman energies as multiples of `Delta_s`.
    pub zeeman_multiples: Vec<f64>,
    pub k_points: usize,
    pub seed: u64,
}

impl Default for NanowireConfig {
    fn default() -> Self {
        Self {
            wire: NanowireParams { mu: 1.5, j: 0.5, alpha: 0.5, e_z: 4.0, delta_s: 0.1 },
            zeeman_multiples: vec![5.0, 10.0, 20.0, 40.0],
            k_points: 401,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
#[derive(Default)]
pub struct ConductanceConfig {
    pub params: ConductanceParams,
    /// Flux values to tabulate; empty means the tuned values `phi0`, `phipi`.
    pub flux0: Vec<f64>,
    pub fluxpi: Vec<f64>,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_unknown_keys() {
        let c: SweepConfig = load(None).unwrap();
        assert_eq!(c, SweepConfig::default());
        let c: SweepConfig = load(Some(r#"{"law": "fig5", "grid": 128}"#)).unwrap();
        assert_eq!((c.law, c.grid), (CouplingLaw::Fig5, 128));
        assert!(load::<SweepConfig>(Some(r#"{"lw": "fig5"}"#)).is_err());
        assert!(load::<ModesConfig>(Some(r#"{"base": {"mu": 1, "J": 1}}"#)).is_err());
        let g: GateConfig = load(Some("{}")).unwrap();
        assert_eq!(g.mzm_per_corner, 3);
    }
}
