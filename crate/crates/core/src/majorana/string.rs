use std::fmt;

use serde::Serialize;

/// Largest mode count a bitset support can hold.
pub const MAX_MODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StringError {
    #[error("strings act on {0} and {1} modes")]
    ModeMismatch(usize, usize),
    #[error("mode index {index} out of range for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },
    #[error("{0} modes exceed the supported maximum of {MAX_MODES}")]
    TooManyModes(usize),
    #[error("parity operators need an even number of at least two modes, got {0}")]
    OddWeight(usize),
}

/// `i^phase_exp · γ_{i₁}···γ_{i_w}` with ascending indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MajoranaString {
    n_modes: usize,
    support: u64,
    phase_exp: u8,
}

impl MajoranaString {
    pub fn identity(n_modes: usize) -> Result<Self, StringError> {
        if n_modes > MAX_MODES {
            return Err(StringError::TooManyModes(n_modes));
        }
        Ok(Self { n_modes, support: 0, phase_exp: 0 })
    }

    /// Product of the listed Majoranas in the given order, times `i^phase_exp`.
    pub fn from_product(n_modes: usize, modes: &[usize], phase_exp: u8) -> Result<Self, StringError> {
        let mut s = Self::identity(n_modes)?;
        s.phase_exp = phase_exp % 4;
        for &m in modes {
            s = s.mul(&Self::single(n_modes, m)?)?;
        }
        Ok(s)
    }

    pub fn single(n_modes: usize, index: usize) -> Result<Self, StringError> {
        let mut s = Self::identity(n_modes)?;
        if index >= n_modes {
            return Err(StringError::IndexOutOfRange { index, n_modes });
        }
        s.support = 1 << index;
        Ok(s)
    }

    /// Raw constructor from a support bitset and phase exponent.
    pub fn from_bits(n_modes: usize, support: u64, phase_exp: u8) -> Result<Self, StringError> {
        let s = Self::identity(n_modes)?;
        if n_modes < 64 && support >> n_modes != 0 {
            let index = 63 - support.leading_zeros() as usize;
            return Err(StringError::IndexOutOfRange { index, n_modes });
        }
        Ok(Self { support, phase_exp: phase_exp % 4, ..s })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn weight(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.n_modes).filter(|&i| self.support >> i & 1 == 1).collect()
    }

    pub fn overlap(&self, other: &Self) -> usize {
        (self.support & other.support).count_ones() as usize
    }

    fn check(&self, other: &Self) -> Result<(), StringError> {
        if self.n_modes != other.n_modes {
            return Err(StringError::ModeMismatch(self.n_modes, other.n_modes));
        }
        Ok(())
    }

    /// Canonical product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, StringError> {
        self.check(other)?;
        // each γ_j of `other` passes the elements of `self` above j
        let mut swaps = 0u32;
        let mut rest = other.support;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let above = if j == 63 { 0 } else { self.support & (!0u64 << (j + 1)) };
            swaps += above.count_ones();
            rest &= rest - 1;
        }
        let phase = (self.phase_exp as u32 + other.phase_exp as u32 + 2 * swaps) % 4;
        Ok(Self { n_modes: self.n_modes, support: self.support ^ other.support, phase_exp: phase as u8 })
    }

    /// Multiplies by a scalar `i^k`.
    pub fn times_i_pow(&self, k: u8) -> Self {
        Self { phase_exp: (self.phase_exp + k) % 4, ..*self }
    }

    pub fn negated(&self) -> Self {
        self.times_i_pow(2)
    }

    /// `|a||b| − |a∩b|` even.
    pub fn commutes(&self, other: &Self) -> Result<bool, StringError> {
        self.check(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        (self.weight() * other.weight() - self.overlap(other)).is_multiple_of(2)
    }

    fn reversal_exp(&self) -> u8 {
        let w = self.weight();
        ((w * w.saturating_sub(1) / 2) % 2) as u8
    }

    pub fn adjoint(&self) -> Self {
        let phase = (4 - self.phase_exp + 2 * self.reversal_exp()) % 4;
        Self { phase_exp: phase, ..*self }
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase_exp % 2 == self.reversal_exp()
    }

    /// `self · self` as `±1` (its exponent is always even).
    pub fn square_sign(&self) -> i8 {
        if (2 * self.phase_exp + 2 * self.reversal_exp()).is_multiple_of(4) {
            1
        } else {
            -1
        }
    }

    /// `+1` or `−1` relative to the Hermitian representative with the same support.
    pub fn hermitian_sign(&self) -> Option<i8> {
        if !self.is_hermitian() {
            return None;
        }
        Some(if self.phase_exp == self.reversal_exp() { 1 } else { -1 })
    }

    /// Same support, positive Hermitian phase.
    pub fn canonical_hermitian(&self) -> Self {
        Self { phase_exp: self.reversal_exp(), ..*self }
    }
}

/// Hermitian parity `i^{w(w−1)/2 mod 2} ∏ γ` over an even set of modes.
pub fn hermitian_parity(n_modes: usize, modes: &[usize]) -> Result<MajoranaString, StringError> {
    let mut s = MajoranaString::identity(n_modes)?;
    for &m in modes {
        if m >= n_modes {
            return Err(StringError::IndexOutOfRange { index: m, n_modes });
        }
        s.support |= 1 << m;
    }
    let w = s.weight();
    if w < 2 || w % 2 == 1 || w != modes.len() {
        return Err(StringError::OddWeight(modes.len()));
    }
    Ok(s.canonical_hermitian())
}

/// Hermitian product of any set of distinct modes (odd weight allowed).
pub fn hermitian_product(n_modes: usize, modes: &[usize]) -> Result<MajoranaString, StringError> {
    let mut bits = 0u64;
    for &m in modes {
        if m >= n_modes {
            return Err(StringError::IndexOutOfRange { index: m, n_modes });
        }
        bits |= 1 << m;
    }
    Ok(MajoranaString::from_bits(n_modes, bits, 0)?.canonical_hermitian())
}

impl fmt::Debug for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase_exp as usize];
        if self.support == 0 {
            return write!(f, "{}1", if prefix.is_empty() { "+" } else { prefix });
        }
        f.write_str(prefix)?;
        let parts: Vec<String> = self.indices().iter().map(|i| format!("g{i}")).collect();
        f.write_str(&parts.join("·"))
    }
}
