//! Binary-driven Kitaev wire in momentum and real space.
//!
//! Units: ħ = 1 and drive period T = 2, so a Hamiltonian applied for a
//! quarter period contributes `exp(−i h / 2)`. Quasienergies are reported
//! as eigenphases φ = εT in (−π, π].

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numkernel::{pauli, unitary_from_hermitian, ComplexMatrix, LinalgError};

/// Drive period.
pub const PERIOD: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("chain needs at least {min} sites, got {sites}")]
    TooSmall { sites: usize, min: usize },
    #[error("non-finite model parameter")]
    NonFinite,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Chemical potential, hopping and pairing of one Kitaev Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KitaevParams {
    pub mu: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "Delta")]
    pub delta: f64,
}

impl KitaevParams {
    pub const fn new(mu: f64, j: f64, delta: f64) -> Self {
        Self { mu, j, delta }
    }

    pub fn is_finite(&self) -> bool {
        self.mu.is_finite() && self.j.is_finite() && self.delta.is_finite()
    }
}

/// How the second Hamiltonian is derived from the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingLaw {
    /// `(mμ, −mJ, −mΔ)`
    Fig1,
    /// `(mμ, mJ, mΔ)`
    Fig3,
    /// `(−mμ, J, −mΔ)`
    Fig5,
    Explicit,
}

impl CouplingLaw {
    pub fn apply(self, h1: KitaevParams, m: f64) -> Option<KitaevParams> {
        match self {
            CouplingLaw::Fig1 => Some(KitaevParams::new(m * h1.mu, -m * h1.j, -m * h1.delta)),
            CouplingLaw::Fig3 => Some(KitaevParams::new(m * h1.mu, m * h1.j, m * h1.delta)),
            CouplingLaw::Fig5 => Some(KitaevParams::new(-m * h1.mu, h1.j, -m * h1.delta)),
            CouplingLaw::Explicit => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CouplingLaw::Fig1 => "fig1",
            CouplingLaw::Fig3 => "fig3",
            CouplingLaw::Fig5 => "fig5",
            CouplingLaw::Explicit => "explicit",
        }
    }
}

/// Two-step drive: `h1` for the first half period, `h2` for the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveProtocol {
    pub h1: KitaevParams,
    pub h2: KitaevParams,
    pub law: CouplingLaw,
    /// Energy ratio; meaningless for [`CouplingLaw::Explicit`].
    pub m: f64,
}

impl DriveProtocol {
    /// Builds `h2` from `h1` by a coupling law. `Explicit` yields a static drive `h2 = h1`.
    pub fn with_law(h1: KitaevParams, law: CouplingLaw, m: f64) -> Result<Self, ModelError> {
        if !h1.is_finite() || !m.is_finite() {
            return Err(ModelError::NonFinite);
        }
        let h2 = law.apply(h1, m).unwrap_or(h1);
        Ok(Self { h1, h2, law, m })
    }

    pub fn explicit(h1: KitaevParams, h2: KitaevParams) -> Result<Self, ModelError> {
        if !h1.is_finite() || !h2.is_finite() {
            return Err(ModelError::NonFinite);
        }
        Ok(Self { h1, h2, law: CouplingLaw::Explicit, m: f64::NAN })
    }

    pub fn fig1(h1: KitaevParams, m: f64) -> Result<Self, ModelError> {
        Self::with_law(h1, CouplingLaw::Fig1, m)
    }

    /// Static drive with the same Hamiltonian throughout.
    pub fn constant(p: KitaevParams) -> Result<Self, ModelError> {
        Self::explicit(p, p)
    }
}

/// `(σz, σy)` coefficients of the Bloch Hamiltonian.
#[inline]
pub fn bloch_vector(p: &KitaevParams, k: f64) -> (f64, f64) {
    (p.mu - 2.0 * p.j * k.cos(), 2.0 * p.delta * k.sin())
}

/// `h(k) = (μ − 2J cos k) σz + 2Δ sin k σy`.
pub fn bloch_hamiltonian(p: &KitaevParams, k: f64) -> ComplexMatrix {
    let (z, y) = bloch_vector(p, k);
    ComplexMatrix::from_vec(
        2,
        2,
        vec![Complex64::new(z, 0.0), Complex64::new(0.0, -y), Complex64::new(0.0, y), Complex64::new(-z, 0.0)],
    )
}

/// Closed-form `exp(−iθ(zσz + yσy)) = cos(θr) − i sin(θr)/r (zσz + yσy)`.
fn su2_exp(z: f64, y: f64, theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, su2_exp_array(z, y, theta).to_vec())
}

/// Per-momentum Floquet operators in the symmetric frame.
#[derive(Debug, Clone)]
pub struct FloquetBundle {
    pub k: f64,
    pub f: ComplexMatrix,
    pub g: ComplexMatrix,
    pub u: ComplexMatrix,
    /// `A, B, C, D` entries of `R F R`.
    pub blocks: [Complex64; 4],
}

impl FloquetBundle {
    pub fn a(&self) -> Complex64 {
        self.blocks[0]
    }
    pub fn b(&self) -> Complex64 {
        self.blocks[1]
    }
    pub fn c(&self) -> Complex64 {
        self.blocks[2]
    }
    pub fn d(&self) -> Complex64 {
        self.blocks[3]
    }

    /// `‖σx F σx − G†‖_max`.
    pub fn chiral_residual(&self) -> f64 {
        let sx = pauli::sigma_x();
        (&(&(&sx * &self.f) * &sx) - &self.g.adjoint()).max_abs()
    }
}

/// Canonical rotation `(σx + σz)/√2`.
pub fn canonical_rotation() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2])
}

/// `F = e^{−ih₁T/4} e^{−ih₂T/4}`, `G = e^{−ih₂T/4} e^{−ih₁T/4}`, `U = FG`.
pub fn bloch_floquet(d: &DriveProtocol, k: f64) -> FloquetBundle {
    let quarter = PERIOD / 4.0;
    let (z1, y1) = bloch_vector(&d.h1, k);
    let (z2, y2) = bloch_vector(&d.h2, k);
    let e1 = su2_exp(z1, y1, quarter);
    let e2 = su2_exp(z2, y2, quarter);
    let f = &e1 * &e2;
    let g = &e2 * &e1;
    let u = &f * &g;
    let blocks = canonical_blocks(&f);
    FloquetBundle { k, f, g, u, blocks }
}

/// `(A, B, C, D)` of `R F R`.
pub fn canonical_blocks(f: &ComplexMatrix) -> [Complex64; 4] {
    let r = canonical_rotation();
    let fc = &(&r * f) * &r;
    [fc[(0, 0)], fc[(0, 1)], fc[(1, 0)], fc[(1, 1)]]
}

/// Allocation-free `(A, B, C, D)` at momentum `k`, used by the winding integrals.
pub fn floquet_blocks(d: &DriveProtocol, k: f64) -> [Complex64; 4] {
    let quarter = PERIOD / 4.0;
    let (z1, y1) = bloch_vector(&d.h1, k);
    let (z2, y2) = bloch_vector(&d.h2, k);
    let e1 = su2_exp_array(z1, y1, quarter);
    let e2 = su2_exp_array(z2, y2, quarter);
    let f = [
        e1[0] * e2[0] + e1[1] * e2[2],
        e1[0] * e2[1] + e1[1] * e2[3],
        e1[2] * e2[0] + e1[3] * e2[2],
        e1[2] * e2[1] + e1[3] * e2[3],
    ];
    [
        (f[0] + f[1] + f[2] + f[3]) * 0.5,
        (f[0] - f[1] + f[2] - f[3]) * 0.5,
        (f[0] + f[1] - f[2] - f[3]) * 0.5,
        (f[0] - f[1] - f[2] + f[3]) * 0.5,
    ]
}

fn su2_exp_array(z: f64, y: f64, theta: f64) -> [Complex64; 4] {
    let r = z.hypot(y);
    let c = (theta * r).cos();
    let s = if r == 0.0 { 0.0 } else { (theta * r).sin() / r };
    [Complex64::new(c, -s * z), Complex64::new(-s * y, 0.0), Complex64::new(s * y, 0.0), Complex64::new(c, s * z)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Open,
    Periodic,
}

/// Real-space BdG matrix in Nambu ordering `(c₁..c_N, c₁†..c_N†)`.
#[derive(Debug, Clone)]
pub struct BdgMatrix {
    pub sites: usize,
    pub bc: BoundaryCondition,
    pub matrix: ComplexMatrix,
}

impl BdgMatrix {
    /// `‖τx conj(H) τx + H‖_max`.
    pub fn phs_residual(&self) -> f64 {
        let n = self.sites;
        let h = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..2 * n {
            for j in 0..2 * n {
                let mirrored = h[((i + n) % (2 * n), (j + n) % (2 * n))].conj();
                worst = worst.max((mirrored + h[(i, j)]).norm());
            }
        }
        worst
    }
}

/// Particle block `μδ_ij − J(δ_{i,j+1} + δ_{i+1,j})`, antisymmetric pairing `Δ` on `(j+1, j)`.
pub fn bdg_matrix(p: &KitaevParams, n: usize, bc: BoundaryCondition) -> Result<BdgMatrix, ModelError> {
    if n < 2 {
        return Err(ModelError::TooSmall { sites: n, min: 2 });
    }
    if !p.is_finite() {
        return Err(ModelError::NonFinite);
    }
    let mut h = ComplexMatrix::zeros(2 * n, 2 * n);
    let mut bonds: Vec<(usize, usize)> = (0..n - 1).map(|j| (j, j + 1)).collect();
    if bc == BoundaryCondition::Periodic {
        bonds.push((n - 1, 0));
    }
    for j in 0..n {
        h[(j, j)] += p.mu;
        h[(n + j, n + j)] -= p.mu;
    }
    for (a, b) in bonds {
        h[(a, b)] -= p.j;
        h[(b, a)] -= p.j;
        h[(n + a, n + b)] += p.j;
        h[(n + b, n + a)] += p.j;
        // P[b, a] = Δ, P[a, b] = −Δ; hole–particle block is −P
        h[(b, n + a)] += p.delta;
        h[(a, n + b)] -= p.delta;
        h[(n + b, a)] -= p.delta;
        h[(n + a, b)] += p.delta;
    }
    Ok(BdgMatrix { sites: n, bc, matrix: h })
}

/// `exp(−iH₁T/4) exp(−iH₂T/2) exp(−iH₁T/4)` for the given boundary condition.
pub fn real_space_floquet(d: &DriveProtocol, n: usize, bc: BoundaryCondition) -> Result<ComplexMatrix, ModelError> {
    let h1 = bdg_matrix(&d.h1, n, bc)?;
    let h2 = bdg_matrix(&d.h2, n, bc)?;
    let e1 = unitary_from_hermitian(&h1.matrix, PERIOD / 4.0)?;
    let e2 = unitary_from_hermitian(&h2.matrix, PERIOD / 2.0)?;
    Ok(&(&e1 * &e2) * &e1)
}

/// Open-chain Floquet operator in the symmetric frame.
pub fn obc_floquet(d: &DriveProtocol, n: usize) -> Result<ComplexMatrix, ModelError> {
    real_space_floquet(d, n, BoundaryCondition::Open)
}
