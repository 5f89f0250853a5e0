//! Stabilizer states over Majorana strings with projective parity measurement.

use rand::Rng;
use serde::Serialize;

use super::code::CodeDefinition;
use super::gf2::{mask_indices, Gf2Basis};
use super::string::{MajoranaString, StringError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error("operator {0} is not Hermitian")]
    NonHermitian(String),
    #[error("operator {0} has odd weight")]
    OddWeight(String),
    #[error("operator {0} commutes with every generator but is not in the stabilizer group")]
    NotInGroup(String),
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error(transparent)]
    String(#[from] StringError),
}

/// Supplies ±1 outcomes for random measurements.
pub trait OutcomeSource {
    fn next_outcome(&mut self) -> i8;
}

/// Fair coin from any RNG.
pub struct RngOutcomes<R>(pub R);

impl<R: Rng> OutcomeSource for RngOutcomes<R> {
    fn next_outcome(&mut self) -> i8 {
        if self.0.gen::<bool>() {
            1
        } else {
            -1
        }
    }
}

/// Predetermined outcomes, consumed in order.
///
/// Panics when exhausted.
pub struct ForcedOutcomes {
    outcomes: Vec<i8>,
    next: usize,
}

impl ForcedOutcomes {
    pub fn new(outcomes: Vec<i8>) -> Self {
        Self { outcomes, next: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.next
    }
}

impl OutcomeSource for ForcedOutcomes {
    fn next_outcome(&mut self) -> i8 {
        let o = *self.outcomes.get(self.next).expect("forced outcomes exhausted");
        self.next += 1;
        o
    }
}

/// Named operator whose action on the state is followed through measurements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tracked {
    pub name: String,
    /// `None` once no representative commuting with a measured operator exists.
    pub op: Option<MajoranaString>,
}

/// Result of measuring one operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measurement {
    pub outcome: i8,
    pub random: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerState {
    n_modes: usize,
    generators: Vec<MajoranaString>,
    tracked: Vec<Tracked>,
}

impl StabilizerState {
    /// Validates count, Hermiticity, commutation and independence of `generators`.
    pub fn new(
        n_modes: usize,
        generators: Vec<MajoranaString>,
        tracked: Vec<(String, MajoranaString)>,
    ) -> Result<Self, StateError> {
        let state = Self {
            n_modes,
            generators,
            tracked: tracked.into_iter().map(|(name, op)| Tracked { name, op: Some(op) }).collect(),
        };
        state.check_invariants()?;
        Ok(state)
    }

    pub fn check_invariants(&self) -> Result<(), StateError> {
        let bad = |m: String| Err(StateError::InvalidGenerators(m));
        if self.n_modes % 2 == 1 {
            return bad(format!("odd mode count {}", self.n_modes));
        }
        if self.generators.len() != self.n_modes / 2 {
            return bad(format!("{} generators for {} modes", self.generators.len(), self.n_modes));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.n_modes() != self.n_modes {
                return Err(StringError::ModeMismatch(g.n_modes(), self.n_modes).into());
            }
            if !g.is_hermitian() || g.square_sign() != 1 {
                return Err(StateError::NonHermitian(g.to_string()));
            }
            if let Some(h) = self.generators[i + 1..].iter().find(|h| !g.commutes_unchecked(h)) {
                return bad(format!("{g} and {h} anticommute"));
            }
        }
        let supports: Vec<u64> = self.generators.iter().map(MajoranaString::support).collect();
        if super::gf2::rank(&supports) != self.generators.len() {
            return bad("generator supports are dependent".into());
        }
        for t in &self.tracked {
            if let Some(op) = &t.op {
                if op.n_modes() != self.n_modes {
                    return Err(StringError::ModeMismatch(op.n_modes(), self.n_modes).into());
                }
            }
        }
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn generators(&self) -> &[MajoranaString] {
        &self.generators
    }

    pub fn tracked(&self) -> &[Tracked] {
        &self.tracked
    }

    pub fn tracked_op(&self, name: &str) -> Option<MajoranaString> {
        self.tracked.iter().find(|t| t.name == name).and_then(|t| t.op)
    }

    pub fn track(&mut self, name: impl Into<String>, op: MajoranaString) {
        let name = name.into();
        self.tracked.retain(|t| t.name != name);
        self.tracked.push(Tracked { name, op: Some(op) });
    }

    /// Conjugation by `s`: every generator and tracked operator that
    /// anticommutes with `s` changes sign.
    pub fn apply_string(&self, s: &MajoranaString) -> Result<Self, StateError> {
        if s.n_modes() != self.n_modes {
            return Err(StringError::ModeMismatch(s.n_modes(), self.n_modes).into());
        }
        let flip = |g: &MajoranaString| if g.commutes_unchecked(s) { *g } else { g.negated() };
        Ok(Self {
            n_modes: self.n_modes,
            generators: self.generators.iter().map(flip).collect(),
            tracked: self
                .tracked
                .iter()
                .map(|t| Tracked { name: t.name.clone(), op: t.op.as_ref().map(flip) })
                .collect(),
        })
    }

    /// `±1` if `±m` is in the stabilizer group, `0` if `m` anticommutes with a generator.
    pub fn expectation(&self, m: &MajoranaString) -> Result<i8, StateError> {
        if m.n_modes() != self.n_modes {
            return Err(StringError::ModeMismatch(m.n_modes(), self.n_modes).into());
        }
        if self.generators.iter().any(|g| !g.commutes_unchecked(m)) {
            return Ok(0);
        }
        self.group_sign(m)
    }

    /// Sign of `m` relative to the product of generators with the same support.
    fn group_sign(&self, m: &MajoranaString) -> Result<i8, StateError> {
        let supports: Vec<u64> = self.generators.iter().map(MajoranaString::support).collect();
        let combo = Gf2Basis::new(&supports).solve(m.support()).ok_or_else(|| StateError::NotInGroup(m.to_string()))?;
        let mut product = MajoranaString::identity(self.n_modes)?;
        for i in mask_indices(combo) {
            product = product.mul(&self.generators[i])?;
        }
        debug_assert_eq!(product.support(), m.support());
        match (4 + product.phase_exp() - m.phase_exp()) % 4 {
            0 => Ok(1),
            2 => Ok(-1),
            _ => Err(StateError::NonHermitian(m.to_string())),
        }
    }

    /// Projective measurement of a Hermitian even-weight string.
    pub fn measure(
        &self,
        m: &MajoranaString,
        source: &mut dyn OutcomeSource,
    ) -> Result<(Measurement, Self), StateError> {
        if m.n_modes() != self.n_modes {
            return Err(StringError::ModeMismatch(m.n_modes(), self.n_modes).into());
        }
        if !m.is_hermitian() || m.square_sign() != 1 {
            return Err(StateError::NonHermitian(m.to_string()));
        }
        if m.weight() % 2 == 1 {
            return Err(StateError::OddWeight(m.to_string()));
        }
        let anti: Vec<usize> =
            (0..self.generators.len()).filter(|&i| !self.generators[i].commutes_unchecked(m)).collect();
        let Some(&first) = anti.first() else {
            let outcome = self.group_sign(m)?;
            return Ok((Measurement { outcome, random: false }, self.clone()));
        };

        let outcome = source.next_outcome();
        let g0 = self.generators[first];
        let mut tracked = self.tracked.clone();
        for t in tracked.iter_mut() {
            let Some(op) = t.op else { continue };
            if op.commutes_unchecked(m) {
                continue;
            }
            t.op = anti
                .iter()
                .map(|&i| self.generators[i])
                .find(|g| g.commutes_unchecked(&op))
                .map(|g| op.mul(&g).expect("same mode count"));
        }
        let mut generators = self.generators.clone();
        for &i in &anti[1..] {
            generators[i] = generators[i].mul(&g0)?;
        }
        generators[first] = if outcome == 1 { *m } else { m.negated() };
        let next = Self { n_modes: self.n_modes, generators, tracked };
        Ok((Measurement { outcome, random: true }, next))
    }
}

/// Code state with all stabilizers `+1` and `logical_z = sign`; tracks both logicals.
pub fn initialize_state(code: &CodeDefinition, logical_sign: i8) -> StabilizerState {
    let mut generators = code.stabilizers.clone();
    generators.push(if logical_sign >= 0 { code.logical_z } else { code.logical_z.negated() });
    StabilizerState::new(
        code.n_modes,
        generators,
        vec![("logical_z".into(), code.logical_z), ("logical_x".into(), code.logical_x)],
    )
    .expect("code generators form a complete commuting set")
}
