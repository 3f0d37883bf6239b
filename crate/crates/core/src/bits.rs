//! Word-level helpers for bit-packed vectors and the [`QubitSet`] mask type.

use crate::error::{Error, Result};

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i % WORD);
    if value {
        words[i / WORD] |= mask;
    } else {
        words[i / WORD] &= !mask;
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Mask of the valid bits in the last word of an `n`-bit vector.
#[inline]
pub(crate) fn tail_mask(n: usize) -> u64 {
    match n % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A subset of the qubits `0..n`, stored as a bit mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitSet {
    n: usize,
    mask: Vec<u64>,
}

impl QubitSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            mask: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.mask.iter_mut() {
            *w = u64::MAX;
        }
        if let Some(last) = s.mask.last_mut() {
            *last &= tail_mask(n);
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::InvalidRegion {
                    start: i,
                    length: 1,
                    n_qubits: n,
                });
            }
            set_bit(&mut s.mask, i, true);
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mask.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.n && get_bit(&self.mask, q)
    }

    pub fn insert(&mut self, q: usize) {
        set_bit(&mut self.mask, q, true);
    }

    pub fn complement(&self) -> Self {
        let mut mask: Vec<u64> = self.mask.iter().map(|w| !w).collect();
        if let Some(last) = mask.last_mut() {
            *last &= tail_mask(self.n);
        }
        Self { n: self.n, mask }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mask = self.mask.iter().zip(&other.mask).map(|(a, b)| a | b).collect();
        Self { n: self.n, mask }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&q| get_bit(&self.mask, q))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.mask
    }
}
