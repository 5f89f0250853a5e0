//! Two Floquet tetrons and the measurement-only π/2 phase gate on qubit 1.
//!
//! Corners A–H each carry `m` zero modes (`m` odd). Qubit 1 lives on corners
//! A, B, E, F and qubit 2 (the ancilla) on C, D, G, H. Four extra reference
//! Majoranas hold a partner qubit that is maximally entangled with qubit 1,
//! so a single stabilizer state certifies the gate on every input.

use serde::Serialize;

use super::gf2::{mask_indices, Gf2Basis};
use super::state::{ForcedOutcomes, OutcomeSource, StabilizerState, StateError};
use super::string::{hermitian_parity, MajoranaString, StringError};

pub const CORNERS: [char; 8] = ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'];
pub const DEFAULT_MZM_PER_CORNER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GateError {
    #[error("corners need an odd number of zero modes, got {0}")]
    EvenCorner(usize),
    #[error("unknown corner {0}")]
    UnknownCorner(char),
    #[error("after the sequence, target {0} is not fixed by the state")]
    SpanMismatch(String),
    #[error("no correction restores the target signs")]
    NoCorrection,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    String(#[from] StringError),
}

#[derive(Debug, Clone, Serialize)]
pub struct TetronLayout {
    pub mzm_per_corner: usize,
    /// Corner modes first, then the four reference Majoranas.
    pub n_modes: usize,
    pub reference: [usize; 4],
    pub sigma_z1: MajoranaString,
    pub sigma_x1: MajoranaString,
    pub sigma_z2: MajoranaString,
    pub sigma_x2: MajoranaString,
    /// Total parity of each island (qubit 1, qubit 2).
    pub island_parity: [MajoranaString; 2],
    /// `iR₁R₂`, `iR₂R₃`.
    pub z_ref: MajoranaString,
    pub x_ref: MajoranaString,
    pub ref_parity: MajoranaString,
}

impl TetronLayout {
    pub fn corner_modes(&self, corner: char) -> Result<Vec<usize>, GateError> {
        let c = CORNERS.iter().position(|&x| x == corner).ok_or(GateError::UnknownCorner(corner))?;
        let m = self.mzm_per_corner;
        Ok((c * m..(c + 1) * m).collect())
    }

    /// `i^{…} ∏ γ` over every zero mode of the listed corners.
    pub fn corner_parity(&self, corners: &[char]) -> Result<MajoranaString, GateError> {
        let mut modes = Vec::new();
        for &c in corners {
            modes.extend(self.corner_modes(c)?);
        }
        Ok(hermitian_parity(self.n_modes, &modes)?)
    }

    /// `i γ_{2s} γ_{2s+1}` inside each corner, leaving one effective Majorana per corner.
    pub fn gauge_generators(&self) -> Result<Vec<MajoranaString>, GateError> {
        let mut out = Vec::new();
        for &c in &CORNERS {
            let modes = self.corner_modes(c)?;
            for pair in modes[..modes.len() - 1].chunks(2) {
                out.push(hermitian_parity(self.n_modes, pair)?);
            }
        }
        Ok(out)
    }

    /// `P σx₁ P† = i σz₁ σx₁`.
    pub fn rotated_x1(&self) -> MajoranaString {
        self.sigma_z1.mul(&self.sigma_x1).expect("same layout").times_i_pow(1)
    }
}

pub fn tetron_layout() -> TetronLayout {
    tetron_layout_with(DEFAULT_MZM_PER_CORNER).expect("default corner size is odd")
}

pub fn tetron_layout_with(mzm_per_corner: usize) -> Result<TetronLayout, GateError> {
    if mzm_per_corner.is_multiple_of(2) {
        return Err(GateError::EvenCorner(mzm_per_corner));
    }
    let corner_modes = 8 * mzm_per_corner;
    let n_modes = corner_modes + 4;
    let reference = [corner_modes, corner_modes + 1, corner_modes + 2, corner_modes + 3];
    let [r1, r2, r3, r4] = reference;
    let zero = MajoranaString::identity(n_modes)?;
    let mut layout = TetronLayout {
        mzm_per_corner,
        n_modes,
        reference,
        sigma_z1: zero,
        sigma_x1: zero,
        sigma_z2: zero,
        sigma_x2: zero,
        island_parity: [zero, zero],
        z_ref: hermitian_parity(n_modes, &[r1, r2])?,
        x_ref: hermitian_parity(n_modes, &[r2, r3])?,
        ref_parity: hermitian_parity(n_modes, &[r1, r2, r3, r4])?,
    };
    layout.sigma_z1 = layout.corner_parity(&['B', 'F'])?;
    layout.sigma_x1 = layout.corner_parity(&['E', 'F'])?;
    layout.sigma_z2 = layout.corner_parity(&['C', 'G'])?;
    layout.sigma_x2 = layout.corner_parity(&['G', 'H'])?;
    layout.island_parity = [layout.corner_parity(&['A', 'B', 'E', 'F'])?, layout.corner_parity(&['C', 'D', 'G', 'H'])?];
    Ok(layout)
}

/// The four parities measured by the gate, in order: (C,G), (B,G), (F,G), (C,G).
pub fn gate_measurements(layout: &TetronLayout) -> Result<[MajoranaString; 4], GateError> {
    Ok([
        layout.corner_parity(&['C', 'G'])?,
        layout.corner_parity(&['B', 'G'])?,
        layout.corner_parity(&['F', 'G'])?,
        layout.corner_parity(&['C', 'G'])?,
    ])
}

/// Physical generators of the initial state (no reference modes), in generator order.
fn physical_initial(layout: &TetronLayout) -> Result<Vec<(String, MajoranaString)>, GateError> {
    let mut out = vec![
        ("ancilla_x2".to_string(), layout.sigma_x2),
        ("island_1".to_string(), layout.island_parity[0]),
        ("island_2".to_string(), layout.island_parity[1]),
    ];
    for (i, g) in layout.gauge_generators()?.into_iter().enumerate() {
        out.push((format!("gauge_{i}"), g));
    }
    Ok(out)
}

/// Ancilla in `σx₂ = +1`, both island parities and corner gauges `+1`,
/// qubit 1 maximally entangled with the reference qubit.
pub fn initial_gate_state(layout: &TetronLayout) -> Result<StabilizerState, GateError> {
    let mut generators: Vec<MajoranaString> = physical_initial(layout)?.into_iter().map(|(_, g)| g).collect();
    generators.push(layout.sigma_z1.mul(&layout.z_ref)?);
    generators.push(layout.sigma_x1.mul(&layout.x_ref)?);
    generators.push(layout.ref_parity);
    let tracked = vec![("sigma_z1".to_string(), layout.sigma_z1), ("sigma_x1".to_string(), layout.sigma_x1)];
    Ok(StabilizerState::new(layout.n_modes, generators, tracked)?)
}

/// Stabilizers of the ideal output `(P ⊗ 1)|initial⟩` with the ancilla left in `σz₂ = +1`.
pub fn target_generators(layout: &TetronLayout) -> Result<Vec<(String, MajoranaString)>, GateError> {
    let mut out: Vec<(String, MajoranaString)> =
        layout.gauge_generators()?.into_iter().enumerate().map(|(i, g)| (format!("gauge_{i}"), g)).collect();
    out.push(("island_1".into(), layout.island_parity[0]));
    out.push(("island_2".into(), layout.island_parity[1]));
    out.push(("ancilla_z2".into(), layout.sigma_z2));
    out.push(("choi_z".into(), layout.sigma_z1.mul(&layout.z_ref)?));
    out.push(("choi_x".into(), layout.rotated_x1().mul(&layout.x_ref)?));
    out.push(("ref_parity".into(), layout.ref_parity));
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct GateTranscript {
    pub outcomes: [i8; 4],
    pub random: [bool; 4],
    /// Names of the candidate operators multiplied into the correction.
    pub correction_terms: Vec<String>,
    pub correction: MajoranaString,
    #[serde(skip)]
    pub final_state: StabilizerState,
}

/// Runs the four measurements, then searches GF(2) for an outcome-dependent
/// correction restoring every target sign, and applies it.
pub fn phase_gate_sequence(
    layout: &TetronLayout,
    initial: &StabilizerState,
    source: &mut dyn OutcomeSource,
) -> Result<GateTranscript, GateError> {
    let measured = gate_measurements(layout)?;
    let mut state = initial.clone();
    let mut outcomes = [0i8; 4];
    let mut random = [false; 4];
    for (i, m) in measured.iter().enumerate() {
        let (r, next) = state.measure(m, source)?;
        outcomes[i] = r.outcome;
        random[i] = r.random;
        state = next;
    }

    let targets = target_generators(layout)?;
    let mut flips = 0u64;
    for (i, (name, t)) in targets.iter().enumerate() {
        match state.expectation(t) {
            Ok(1) => {}
            Ok(-1) => flips |= 1 << i,
            _ => return Err(GateError::SpanMismatch(name.clone())),
        }
    }

    let mut candidates: Vec<(String, MajoranaString)> =
        measured.iter().enumerate().map(|(i, m)| (format!("measured_{}", i + 1), *m)).collect();
    candidates.extend(physical_initial(layout)?);
    candidates.push(("sigma_z1".into(), layout.sigma_z1));
    candidates.push(("sigma_x1".into(), layout.sigma_x1));
    candidates.push(("sigma_z2".into(), layout.sigma_z2));
    candidates.push(("sigma_x2".into(), layout.sigma_x2));
    let patterns: Vec<u64> = candidates
        .iter()
        .map(|(_, c)| {
            targets
                .iter()
                .enumerate()
                .filter(|(_, (_, t))| !t.commutes_unchecked(c))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let combo = Gf2Basis::new(&patterns).solve(flips).ok_or(GateError::NoCorrection)?;

    let mut correction = MajoranaString::identity(layout.n_modes)?;
    let mut correction_terms = Vec::new();
    for i in mask_indices(combo) {
        correction = correction.mul(&candidates[i].1)?;
        correction_terms.push(candidates[i].0.clone());
    }
    let correction = correction.canonical_hermitian();
    let final_state = state.apply_string(&correction)?;
    Ok(GateTranscript { outcomes, random, correction_terms, correction, final_state })
}

/// Independent checks on a corrected output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateCheck {
    /// Every target stabilizer has expectation `+1`.
    pub choi: bool,
    /// Tracked σz₁ still acts as σz₁.
    pub tracked_z: bool,
    /// Tracked σx₁ acts as `P σx₁ P† = −σy₁`.
    pub tracked_x: bool,
}

impl GateCheck {
    pub fn passed(&self) -> bool {
        self.choi && self.tracked_z && self.tracked_x
    }
}

fn acts_as(state: &StabilizerState, tracked: Option<MajoranaString>, expected: &MajoranaString) -> bool {
    let Some(t) = tracked else { return false };
    match t.mul(&expected.adjoint()) {
        Ok(p) => p.is_hermitian() && state.expectation(&p) == Ok(1),
        Err(_) => false,
    }
}

pub fn verify_phase_gate(layout: &TetronLayout, transcript: &GateTranscript) -> Result<GateCheck, GateError> {
    let s = &transcript.final_state;
    let mut choi = true;
    for (_, t) in target_generators(layout)? {
        choi &= s.expectation(&t)? == 1;
    }
    Ok(GateCheck {
        choi,
        tracked_z: acts_as(s, s.tracked_op("sigma_z1"), &layout.sigma_z1),
        tracked_x: acts_as(s, s.tracked_op("sigma_x1"), &layout.rotated_x1()),
    })
}

/// All `2⁴` outcome sequences, each corrected and verified.
pub fn enumerate_branches(layout: &TetronLayout) -> Result<Vec<(GateTranscript, GateCheck)>, GateError> {
    let initial = initial_gate_state(layout)?;
    let mut out = Vec::with_capacity(16);
    for mask in 0..16u8 {
        let forced: Vec<i8> = (0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let mut source = ForcedOutcomes::new(forced);
        let t = phase_gate_sequence(layout, &initial, &mut source)?;
        let check = verify_phase_gate(layout, &t)?;
        out.push((t, check));
    }
    Ok(out)
}
