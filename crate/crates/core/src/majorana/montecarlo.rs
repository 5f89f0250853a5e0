//! Quasiparticle-poisoning trials: inject, measure syndromes, decode, correct.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::code::{classify_residual, decode, CodeDefinition, ResidualClass, Syndrome, N_STABILIZERS};
use super::state::{initialize_state, OutcomeSource, StabilizerState, StateError};
use super::string::MajoranaString;

/// Which error each trial injects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorModel {
    /// One uniformly random Majorana.
    Single,
    /// One Majorana from each decoding block.
    CrossBlockPair,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ResidualCounts {
    pub stabilizer: usize,
    pub logical_x: usize,
    pub logical_z: usize,
    pub logical_y: usize,
}

impl ResidualCounts {
    pub fn total(&self) -> usize {
        self.stabilizer + self.logical_x + self.logical_z + self.logical_y
    }

    fn add(&mut self, class: ResidualClass) {
        match class {
            ResidualClass::Stabilizer => self.stabilizer += 1,
            ResidualClass::LogicalX => self.logical_x += 1,
            ResidualClass::LogicalZ => self.logical_z += 1,
            ResidualClass::LogicalY => self.logical_y += 1,
            ResidualClass::Detectable => {}
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.stabilizer += o.stabilizer;
        self.logical_x += o.logical_x;
        self.logical_z += o.logical_z;
        self.logical_y += o.logical_y;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McReport {
    pub seed: u64,
    pub trials: usize,
    pub corrected: usize,
    pub logical_failures: usize,
    pub residual_classes: ResidualCounts,
}

/// Outcome of correcting one injected error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub error: MajoranaString,
    pub syndrome: Syndrome,
    pub correction: MajoranaString,
    pub residual: ResidualClass,
    /// All stabilizers back at `+1` and the logical expectation restored.
    pub state_restored: bool,
}

impl TrialOutcome {
    pub fn corrected(&self) -> bool {
        self.state_restored && self.residual == ResidualClass::Stabilizer
    }
}

/// Stabilizer measurements are deterministic on code states with Pauli errors.
struct NoRandomness;

impl OutcomeSource for NoRandomness {
    fn next_outcome(&mut self) -> i8 {
        unreachable!("stabilizer measurements on a corrupted code state are deterministic")
    }
}

/// Injects `error` into `|σz = +1⟩`, measures the six stabilizers, decodes and corrects.
pub fn correct_error(code: &CodeDefinition, error: &MajoranaString) -> Result<TrialOutcome, StateError> {
    let clean = initialize_state(code, 1);
    let mut state = clean.apply_string(error)?;
    let mut bits = [false; N_STABILIZERS];
    for (b, s) in bits.iter_mut().zip(&code.stabilizers) {
        let (m, next) = state.measure(s, &mut NoRandomness)?;
        *b = m.outcome == -1;
        state = next;
    }
    let syndrome = Syndrome { bits };
    let correction = decode(code, &syndrome);
    let state = state.apply_string(&correction)?;
    let residual = classify_residual(code, &correction.mul(error)?);
    Ok(TrialOutcome { error: *error, syndrome, correction, residual, state_restored: restored(code, &state)? })
}

fn restored(code: &CodeDefinition, state: &StabilizerState) -> Result<bool, StateError> {
    for s in &code.stabilizers {
        if state.expectation(s)? != 1 {
            return Ok(false);
        }
    }
    Ok(state.expectation(&code.logical_z)? == 1)
}

fn draw_error(code: &CodeDefinition, model: ErrorModel, rng: &mut ChaCha8Rng) -> MajoranaString {
    match model {
        ErrorModel::Single => code.single(rng.gen_range(0..code.n_modes)),
        ErrorModel::CrossBlockPair => {
            let a = code.blocks[0][rng.gen_range(0..code.blocks[0].len())];
            let b = code.blocks[1][rng.gen_range(0..code.blocks[1].len())];
            code.single(a).mul(&code.single(b)).expect("same code")
        }
    }
}

/// Trial `t` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `t`.
pub fn qp_monte_carlo(
    code: &CodeDefinition,
    trials: usize,
    seed: u64,
    model: ErrorModel,
) -> Result<McReport, StateError> {
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            correct_error(code, &draw_error(code, model, &mut rng))
        })
        .collect::<Result<_, _>>()?;
    Ok(summarize(seed, &outcomes))
}

pub fn summarize(seed: u64, outcomes: &[TrialOutcome]) -> McReport {
    let mut classes = ResidualCounts::default();
    let mut corrected = 0;
    for o in outcomes {
        classes.add(o.residual);
        if o.corrected() {
            corrected += 1;
        }
    }
    let logical_failures = outcomes
        .iter()
        .filter(|o| matches!(o.residual, ResidualClass::LogicalX | ResidualClass::LogicalY | ResidualClass::LogicalZ))
        .count();
    McReport { seed, trials: outcomes.len(), corrected, logical_failures, residual_classes: classes }
}

/// Every pair with one Majorana in each block (7 × 7).
pub fn cross_block_pairs(code: &CodeDefinition) -> Vec<MajoranaString> {
    let mut out = Vec::new();
    for &a in &code.blocks[0] {
        for &b in &code.blocks[1] {
            out.push(code.single(a).mul(&code.single(b)).expect("same code"));
        }
    }
    out
}

/// Every pair inside one block (2 × C(7,2)).
pub fn same_block_pairs(code: &CodeDefinition) -> Vec<MajoranaString> {
    let mut out = Vec::new();
    for block in &code.blocks {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                out.push(code.single(a).mul(&code.single(b)).expect("same code"));
            }
        }
    }
    out
}

/// Corrects each listed error once.
pub fn exhaustive(code: &CodeDefinition, errors: &[MajoranaString]) -> Result<Vec<TrialOutcome>, StateError> {
    errors.par_iter().map(|e| correct_error(code, e)).collect()
}

/// Combines two reports; the seed of `a` is kept.
pub fn merge_reports(a: McReport, b: McReport) -> McReport {
    McReport {
        seed: a.seed,
        trials: a.trials + b.trials,
        corrected: a.corrected + b.corrected,
        logical_failures: a.logical_failures + b.logical_failures,
        residual_classes: a.residual_classes.merge(b.residual_classes),
    }
}
