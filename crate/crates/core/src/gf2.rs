//! Dense GF(2) matrices with packed rows.

use crate::bits::{get_bit, set_bit, words_for, xor_into};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows given as `0`/`1` strings, e.g. `"1100"`.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, c) in r.chars().enumerate() {
                m.set(i, j, c == '1');
            }
        }
        m
    }

    /// Builds a matrix from packed rows of `cols` bits each.
    pub fn from_packed_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [u64]>) -> Self {
        let stride = words_for(cols);
        let mut bits = Vec::new();
        let mut n = 0;
        for r in rows {
            debug_assert_eq!(r.len(), stride);
            bits.extend_from_slice(r);
            n += 1;
        }
        Self {
            rows: n,
            cols,
            stride,
            bits,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        get_bit(self.row(i), j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let s = self.stride;
        set_bit(&mut self.bits[i * s..(i + 1) * s], j, v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.bits.swap(a * s + w, b * s + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let s = self.stride;
        let (d, sr) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_into(d, sr);
    }

    /// Rank over GF(2). Works on a scratch copy.
    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// In-place reduced row echelon form. Returns the pivot column of each of
    /// the leading `rank` rows.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        self.row_reduce_cols(self.cols)
    }

    /// Like [`row_reduce`](Self::row_reduce) but only pivots on the first
    /// `limit` columns; the remaining columns ride along (useful for
    /// augmented systems).
    pub fn row_reduce_cols(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for w in 0..words_for(limit) {
            if r == self.rows {
                break;
            }
            let mut col_bits = u64::MAX;
            if (w + 1) * 64 > limit {
                col_bits = (1u64 << (limit - w * 64)) - 1;
            }
            while col_bits != 0 && r < self.rows {
                let b = col_bits.trailing_zeros() as usize;
                col_bits &= col_bits - 1;
                let mask = 1u64 << b;
                let s = self.stride;
                let Some(p) = (r..self.rows).find(|&i| self.bits[i * s + w] & mask != 0) else {
                    continue;
                };
                self.swap_rows(r, p);
                for i in 0..self.rows {
                    if i != r && self.bits[i * s + w] & mask != 0 {
                        self.add_row(i, r);
                    }
                }
                pivots.push(w * 64 + b);
                r += 1;
            }
        }
        pivots
    }
}

/// Rank of a set of packed rows of `cols` bits; the rows are copied.
pub fn rank_of_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [u64]>) -> usize {
    Gf2Matrix::from_packed_rows(cols, rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_full_rank() {
        for n in [1, 5, 64, 65, 130] {
            assert_eq!(Gf2Matrix::identity(n).rank(), n);
        }
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(Gf2Matrix::zeros(7, 9).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(0, 9).rank(), 0);
    }

    #[test]
    fn dependent_third_row() {
        let m = Gf2Matrix::from_strs(&["1100", "0110", "1010"]);
        assert_eq!(m.rank(), 2);
        // rank does not mutate
        assert_eq!(m, Gf2Matrix::from_strs(&["1100", "0110", "1010"]));
    }

    #[test]
    fn reduced_form_has_unit_pivot_columns() {
        let mut m = Gf2Matrix::from_strs(&["0111", "1011", "1101", "0000"]);
        let piv = m.row_reduce();
        assert_eq!(piv.len(), 3);
        for (r, &c) in piv.iter().enumerate() {
            for i in 0..m.rows() {
                assert_eq!(m.get(i, c), i == r);
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = Gf2Matrix> {
        (1usize..12, 1usize..140).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::bool::ANY, r * c).prop_map(move |v| {
                let mut m = Gf2Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, v[i * c + j]);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_bounded_by_shape(m in arb_matrix()) {
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_invariant_under_row_ops(m in arb_matrix(), a in 0usize..12, b in 0usize..12) {
            let r0 = m.rank();
            let (a, b) = (a % m.rows(), b % m.rows());
            let mut added = m.clone();
            added.add_row(a, b);
            prop_assert_eq!(added.rank(), r0);
            let mut swapped = m.clone();
            swapped.swap_rows(a, b);
            prop_assert_eq!(swapped.rank(), r0);
        }
    }
}
