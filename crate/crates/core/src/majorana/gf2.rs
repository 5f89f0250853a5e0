//! Linear algebra over GF(2) on `u64` bit vectors.

/// Row-reduced basis that remembers which inputs built each row.
#[derive(Debug, Clone, Default)]
pub struct Gf2Basis {
    rows: Vec<(u64, u128)>,
}

impl Gf2Basis {
    /// Basis of `vectors`; input `i` is bit `i` of the combination masks.
    ///
    /// Panics if more than 128 vectors are given.
    pub fn new(vectors: &[u64]) -> Self {
        assert!(vectors.len() <= 128, "at most 128 input vectors");
        let mut basis = Self::default();
        for (i, &v) in vectors.iter().enumerate() {
            basis.insert(v, 1u128 << i);
        }
        basis
    }

    fn insert(&mut self, v: u64, combo: u128) -> bool {
        let (r, c) = self.reduce(v, combo);
        if r == 0 {
            return false;
        }
        self.rows.push((r, c));
        self.rows.sort_by_key(|r| std::cmp::Reverse(r.0));
        true
    }

    /// Rows sorted by descending value keep distinct leading bits.
    fn reduce(&self, mut v: u64, mut combo: u128) -> (u64, u128) {
        for &(r, c) in &self.rows {
            let lead = 63 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v, 0).0 == 0
    }

    /// Subset of inputs (as a bitmask) whose XOR equals `target`.
    pub fn solve(&self, target: u64) -> Option<u128> {
        let (r, c) = self.reduce(target, 0);
        (r == 0).then_some(c)
    }
}

pub fn rank(vectors: &[u64]) -> usize {
    let mut basis = Gf2Basis::default();
    vectors.iter().filter(|&&v| basis.insert(v, 0)).count()
}

/// Indices set in a combination mask.
pub fn mask_indices(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}
