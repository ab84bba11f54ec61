//! Bit-packed kernels for GF(2): one `u64` word holds 64 consecutive entries
//! of a row.

use super::Matrix;

#[derive(Clone, Debug)]
pub(crate) struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub(crate) fn from_matrix(m: &Matrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            let row = m.row(i);
            let dst = &mut out.words[i * out.stride..(i + 1) * out.stride];
            for (j, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    dst[j / 64] |= 1 << (j % 64);
                }
            }
        }
        out
    }

    pub(crate) fn to_entries(&self) -> Vec<u32> {
        let mut data = vec![0u32; self.rows * self.cols];
        for i in 0..self.rows {
            let src = self.row(i);
            let dst = &mut data[i * self.cols..(i + 1) * self.cols];
            for (j, d) in dst.iter_mut().enumerate() {
                *d = ((src[j / 64] >> (j % 64)) & 1) as u32;
            }
        }
        data
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> bool {
        (self.words[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    /// Rank by forward elimination; consumes the matrix.
    pub(crate) fn rank(mut self) -> usize {
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let Some(pivot) = (rank..self.rows).find(|&r| self.words[r * stride + word] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                for w in 0..stride {
                    self.words.swap(pivot * stride + w, rank * stride + w);
                }
            }
            let (head, tail) = self.words.split_at_mut((rank + 1) * stride);
            let pivot_row = &head[rank * stride + word..(rank + 1) * stride];
            for r in 0..self.rows - rank - 1 {
                let row = &mut tail[r * stride..(r + 1) * stride];
                if row[word] & mask != 0 {
                    for (dst, src) in row[word..].iter_mut().zip(pivot_row) {
                        *dst ^= *src;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Product `self · rhs`, accumulating rows of `rhs` selected by the set
    /// bits of each row of `self`.
    pub(crate) fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        let stride = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.words[i * stride..(i + 1) * stride];
            for k in 0..self.cols {
                if self.bit(i, k) {
                    for (d, s) in dst.iter_mut().zip(rhs.row(k)) {
                        *d ^= *s;
                    }
                }
            }
        }
        out
    }
}
