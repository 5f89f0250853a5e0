//! The 14-Majorana Steane [[7,1,3]] code on three zero and four π modes per end.

use std::fmt;

use serde::Serialize;

use super::gf2::Gf2Basis;
use super::string::{hermitian_parity, hermitian_product, MajoranaString};
use crate::edge_modes::Side;
use crate::invariants::Sector;

pub const CODE_MODES: usize = 14;
pub const N_STABILIZERS: usize = 6;

/// `γ_{sector, side, index}` with a one-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModeLabel {
    pub sector: Sector,
    pub side: Side,
    pub index: usize,
}

impl ModeLabel {
    pub const fn new(sector: Sector, side: Side, index: usize) -> Self {
        Self { sector, side, index }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sec = match self.sector {
            Sector::Zero => "0",
            Sector::Pi => "pi",
        };
        let side = match self.side {
            Side::Left => "L",
            Side::Right => "R",
            Side::Delocalized => "D",
        };
        write!(f, "{sec}{side}{}", self.index)
    }
}

/// Mode ids: 0L1–0L3, 0R1–0R3, πL1–πL4, πR1–πR4.
pub fn mode_labels() -> Vec<ModeLabel> {
    let mut out = Vec::with_capacity(CODE_MODES);
    for (sector, count) in [(Sector::Zero, 3), (Sector::Pi, 4)] {
        for side in [Side::Left, Side::Right] {
            out.extend((1..=count).map(|i| ModeLabel::new(sector, side, i)));
        }
    }
    out
}

pub fn mode_id(label: ModeLabel) -> Option<usize> {
    mode_labels().iter().position(|&l| l == label)
}

fn z(side: Side, i: usize) -> usize {
    mode_id(ModeLabel::new(Sector::Zero, side, i)).expect("valid zero-mode label")
}

fn p(side: Side, i: usize) -> usize {
    mode_id(ModeLabel::new(Sector::Pi, side, i)).expect("valid pi-mode label")
}

#[derive(Debug, Clone)]
pub struct CodeDefinition {
    pub n_modes: usize,
    pub labels: Vec<ModeLabel>,
    pub stabilizers: Vec<MajoranaString>,
    pub logical_z: MajoranaString,
    pub logical_x: MajoranaString,
    /// Mode ids decoded by stabilizer bits 0–2 and 3–5 respectively.
    pub blocks: [Vec<usize>; 2],
}

impl CodeDefinition {
    pub fn label(&self, id: usize) -> ModeLabel {
        self.labels[id]
    }

    pub fn single(&self, id: usize) -> MajoranaString {
        MajoranaString::single(self.n_modes, id).expect("mode id in range")
    }

    pub fn identity(&self) -> MajoranaString {
        MajoranaString::identity(self.n_modes).expect("code size within bitset")
    }

    /// `σy = i σx σz`, Hermitian.
    pub fn logical_y(&self) -> MajoranaString {
        let xz = self.logical_x.mul(&self.logical_z).expect("same code");
        xz.times_i_pow(1)
    }
}

/// Stabilizers, logicals and decoding blocks of the Majorana Steane code.
pub fn steane_code() -> CodeDefinition {
    use Side::{Left as L, Right as R};
    let supports = [
        [z(L, 1), z(R, 1), p(L, 1), p(R, 1)],
        [z(L, 1), z(R, 2), p(L, 1), p(R, 2)],
        [z(L, 1), z(R, 1), p(L, 2), p(R, 2)],
        [z(L, 2), z(R, 3), p(L, 3), p(R, 3)],
        [z(L, 3), z(R, 3), p(L, 3), p(R, 4)],
        [z(L, 2), z(R, 3), p(L, 4), p(R, 4)],
    ];
    let stabilizers =
        supports.iter().map(|s| hermitian_parity(CODE_MODES, s).expect("weight-four stabilizer")).collect();
    let zeros: Vec<usize> = [L, R].iter().flat_map(|&s| (1..=3).map(move |i| z(s, i))).collect();
    let logical_z = hermitian_parity(CODE_MODES, &zeros).expect("weight-six logical");
    let logical_x = hermitian_product(CODE_MODES, &[z(L, 1), z(R, 1), z(R, 2)]).expect("weight-three logical");
    let blocks = [
        vec![z(L, 1), z(R, 1), z(R, 2), p(L, 1), p(L, 2), p(R, 1), p(R, 2)],
        vec![z(L, 2), z(L, 3), z(R, 3), p(L, 3), p(L, 4), p(R, 3), p(R, 4)],
    ];
    let code = CodeDefinition { n_modes: CODE_MODES, labels: mode_labels(), stabilizers, logical_z, logical_x, blocks };
    debug_assert!(structure_violation(&code).is_none());
    code
}

/// First violated structural invariant, if any.
fn structure_violation(code: &CodeDefinition) -> Option<String> {
    for (i, a) in code.stabilizers.iter().enumerate() {
        if !a.is_hermitian() || a.square_sign() != 1 {
            return Some(format!("stabilizer {} is not a Hermitian involution", i + 1));
        }
        for b in &code.stabilizers[i + 1..] {
            if !a.commutes_unchecked(b) {
                return Some(format!("stabilizer {} does not commute with the rest", i + 1));
            }
        }
        for (name, l) in [("z", &code.logical_z), ("x", &code.logical_x)] {
            if !a.commutes_unchecked(l) {
                return Some(format!("logical {name} anticommutes with stabilizer {}", i + 1));
            }
        }
    }
    if code.logical_z.commutes_unchecked(&code.logical_x) {
        return Some("logical z and x commute".into());
    }
    None
}

/// Bit `i` set when the error anticommutes with stabilizer `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Syndrome {
    pub bits: [bool; N_STABILIZERS],
}

impl Syndrome {
    pub fn from_mask(mask: u8) -> Self {
        let mut bits = [false; N_STABILIZERS];
        for (i, b) in bits.iter_mut().enumerate() {
            *b = mask >> i & 1 == 1;
        }
        Self { bits }
    }

    pub fn from_bits(bits: [u8; N_STABILIZERS]) -> Self {
        Self { bits: bits.map(|b| b != 0) }
    }

    pub fn mask(&self) -> u8 {
        self.bits.iter().enumerate().map(|(i, &b)| (b as u8) << i).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.mask() == 0
    }

    /// Three-bit pattern for block 0 (bits 0–2) or block 1 (bits 3–5).
    pub fn block(&self, b: usize) -> u8 {
        (self.mask() >> (3 * b)) & 0b111
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn syndrome(code: &CodeDefinition, error: &MajoranaString) -> Syndrome {
    let mut bits = [false; N_STABILIZERS];
    for (b, s) in bits.iter_mut().zip(&code.stabilizers) {
        *b = !s.commutes_unchecked(error);
    }
    Syndrome { bits }
}

/// Block decoding: each 3-bit half names at most one Majorana of its block;
/// the correction is the product of the named singles.
pub fn decode(code: &CodeDefinition, s: &Syndrome) -> MajoranaString {
    let mut correction = code.identity();
    for (b, block) in code.blocks.iter().enumerate() {
        let pattern = s.block(b);
        if pattern == 0 {
            continue;
        }
        let hit = block
            .iter()
            .copied()
            .find(|&id| syndrome(code, &code.single(id)).block(b) == pattern)
            .expect("every nonzero block pattern names a mode");
        correction = correction.mul(&code.single(hit)).expect("same code");
    }
    correction
}

/// One row of the single-Majorana syndrome table.
#[derive(Debug, Clone, Serialize)]
pub struct SyndromeRow {
    pub label: ModeLabel,
    pub syndrome: Syndrome,
}

pub fn syndrome_table(code: &CodeDefinition) -> Vec<SyndromeRow> {
    (0..code.n_modes)
        .map(|id| SyndromeRow { label: code.label(id), syndrome: syndrome(code, &code.single(id)) })
        .collect()
}

/// How a residual operator acts on the code space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualClass {
    Stabilizer,
    LogicalX,
    LogicalZ,
    LogicalY,
    /// Anticommutes with some stabilizer.
    Detectable,
}

/// Classifies a string that commutes with every stabilizer by GF(2) span membership.
pub fn classify_residual(code: &CodeDefinition, r: &MajoranaString) -> ResidualClass {
    if !syndrome(code, r).is_trivial() {
        return ResidualClass::Detectable;
    }
    let group: Vec<u64> = code.stabilizers.iter().map(MajoranaString::support).collect();
    let basis = Gf2Basis::new(&group);
    let x = code.logical_x.support();
    let zz = code.logical_z.support();
    let v = r.support();
    if basis.contains(v) {
        ResidualClass::Stabilizer
    } else if basis.contains(v ^ x) {
        ResidualClass::LogicalX
    } else if basis.contains(v ^ zz) {
        ResidualClass::LogicalZ
    } else if basis.contains(v ^ x ^ zz) {
        ResidualClass::LogicalY
    } else {
        // unreachable for a complete code: stabilizers and logicals span the commutant
        ResidualClass::Detectable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("code validation failed: {0}")]
    ValidationFailed(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub distinct_single_syndromes: usize,
    pub block_patterns: [usize; 2],
    /// Strings of weight 1 and 2 examined.
    pub low_weight_strings: usize,
    pub low_weight_logicals: usize,
    pub min_logical_weight: usize,
}

/// Checks unique nonzero single-Majorana syndromes, complete 3-bit block
/// patterns, absence of logicals of weight below three, and minimal weight three.
pub fn validate_code(code: &CodeDefinition) -> Result<ValidationReport, CodeError> {
    if let Some(v) = structure_violation(code) {
        return Err(CodeError::ValidationFailed(v));
    }
    let singles: Vec<Syndrome> = (0..code.n_modes).map(|i| syndrome(code, &code.single(i))).collect();
    let mut masks: Vec<u8> = singles.iter().map(Syndrome::mask).collect();
    if masks.contains(&0) {
        return Err(CodeError::ValidationFailed("(a) a single Majorana has a trivial syndrome".into()));
    }
    masks.sort_unstable();
    masks.dedup();
    if masks.len() != code.n_modes {
        return Err(CodeError::ValidationFailed("(a) single-Majorana syndromes are not distinct".into()));
    }

    let mut block_patterns = [0usize; 2];
    for (b, block) in code.blocks.iter().enumerate() {
        let mut seen: Vec<u8> = block.iter().map(|&id| singles[id].block(b)).filter(|&p| p != 0).collect();
        seen.sort_unstable();
        seen.dedup();
        block_patterns[b] = seen.len();
        if seen.len() != 7 {
            return Err(CodeError::ValidationFailed(format!(
                "(b) block {} realizes {} of 7 nonzero patterns",
                b + 1,
                seen.len()
            )));
        }
        let other = 1 - b;
        if block.iter().any(|&id| singles[id].block(other) != 0) {
            return Err(CodeError::ValidationFailed(format!("(b) block {} leaks into the other block", b + 1)));
        }
    }

    let is_logical = |s: &MajoranaString| {
        matches!(
            classify_residual(code, s),
            ResidualClass::LogicalX | ResidualClass::LogicalY | ResidualClass::LogicalZ
        )
    };
    let n = code.n_modes;
    let mut low_weight_strings = 0;
    let mut low_weight_logicals = 0;
    for i in 0..n {
        for j in i..n {
            let bits = (1u64 << i) | (1u64 << j);
            let s = MajoranaString::from_bits(n, bits, 0).expect("in range");
            low_weight_strings += 1;
            if is_logical(&s) {
                low_weight_logicals += 1;
            }
        }
    }
    // i == j gives the 14 singles (bits collapse to one mode)
    if low_weight_strings != 105 {
        return Err(CodeError::ValidationFailed(format!("(c) enumerated {low_weight_strings} strings, expected 105")));
    }
    if low_weight_logicals > 0 {
        return Err(CodeError::ValidationFailed(format!("(c) {low_weight_logicals} logicals of weight below 3")));
    }

    let mut min_logical_weight = None;
    'outer: for w in 3..=n {
        for bits in subsets_of_weight(n, w) {
            let s = MajoranaString::from_bits(n, bits, 0).expect("in range");
            if is_logical(&s) {
                min_logical_weight = Some(w);
                break 'outer;
            }
        }
    }
    match min_logical_weight {
        Some(3) => {}
        other => {
            return Err(CodeError::ValidationFailed(format!("(d) minimal logical weight is {other:?}, expected 3")))
        }
    }
    if code.logical_x.weight() != 3 || !is_logical(&code.logical_x) {
        return Err(CodeError::ValidationFailed("(d) logical x is not a weight-3 logical".into()));
    }

    Ok(ValidationReport {
        distinct_single_syndromes: masks.len(),
        block_patterns,
        low_weight_strings,
        low_weight_logicals,
        min_logical_weight: 3,
    })
}

/// All `n`-bit masks with exactly `w` bits set (Gosper's hack).
fn subsets_of_weight(n: usize, w: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if w == 0 { 0 } else { (1u64 << w) - 1 };
    let mut done = w > n;
    std::iter::from_fn(move || {
        if done || cur >= limit {
            return None;
        }
        let out = cur;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        Some(out)
    })
}
