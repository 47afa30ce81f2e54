//! Fixed-length bit vectors with a shifted AND-popcount kernel.

#[derive(Clone, Debug)]
pub(crate) struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.set(i);
        }
        v
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// Two back-to-back copies: bit `i` of the result is bit `i mod len`.
    pub fn doubled(&self) -> BitVec {
        let mut out = BitVec::zeros(2 * self.len);
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                out.set(i);
                out.set(i + self.len);
                bits &= bits - 1;
            }
        }
        out
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    /// `#{ j < self.len : self[j] && other[j + shift] }`.
    pub fn overlap_shifted(&self, other: &BitVec, shift: usize) -> usize {
        let q = shift / 64;
        let r = shift % 64;
        let mut total = 0u32;
        if r == 0 {
            for (i, &w) in self.words.iter().enumerate() {
                total += (w & other.word(i + q)).count_ones();
            }
        } else {
            for (i, &w) in self.words.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let shifted = (other.word(i + q) >> r) | (other.word(i + q + 1) << (64 - r));
                total += (w & shifted).count_ones();
            }
        }
        total as usize
    }
}
