use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::vector::{nibbles_to_hex, words_for, BitVector, WORD};
use crate::{Error, Result};

/// A dense matrix over GF(2), stored row-major with each row padded to whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries, e.g. `&[&[1, 1], &[0, 1]]`.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c] != 0)
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD];
        let m = 1u64 << (c % WORD);
        if bit {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r))
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_fn(self.rows, |r| self.get(r, c))
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// `row[dst] ^= row[src]`.
    #[inline]
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (d, sr) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..dst * s + s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..src * s + s])
        };
        for (a, b) in d.iter_mut().zip(sr) {
            *a ^= *b;
        }
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    pub(crate) fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= *b;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for r in 0..self.rows {
            let dst = &mut out.data[r * s..(r + 1) * s];
            for k in self.row_ones(r) {
                for (d, x) in dst.iter_mut().zip(other.row_words(k)) {
                    *d ^= *x;
                }
            }
        }
        Ok(out)
    }

    /// The row-vector product `v·M`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = BitVector::zeros(self.cols);
        for k in v.iter_ones() {
            for (d, x) in out.words_mut().iter_mut().zip(self.row_words(k)) {
                *d ^= *x;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The `h x w` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> BitMatrix {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        let mut out = BitMatrix::zeros(h, w);
        for r in 0..h {
            let row = BitVector::from_words(self.cols, self.row_words(r0 + r)).slice(c0, w);
            out.set_row(r, &row);
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &BitMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_row(r, rank);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// The determinant, which over GF(2) is 1 exactly when the matrix has full rank.
    pub fn determinant(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rank() == self.rows)
    }

    /// Gauss–Jordan inversion with first-nonzero-row pivoting.
    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| a.get(r, c)).ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for r in 0..n {
                if r != c && a.get(r, c) {
                    a.xor_row(r, c);
                    inv.xor_row(r, c);
                }
            }
        }
        Ok(inv)
    }

    /// Finds `y` with `y·M = v`. Rows that are not needed get coefficient 0.
    pub fn solve_row(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut basis: Vec<(usize, BitVector, BitVector)> = Vec::new();
        for r in 0..self.rows {
            let mut row = self.row(r);
            let mut comb = BitVector::unit(self.rows, r);
            for (pc, b, bc) in &basis {
                if row.get(*pc) {
                    row.xor_assign(b);
                    comb.xor_assign(bc);
                }
            }
            let pivot = row.iter_ones().next();
            if let Some(pc) = pivot {
                basis.push((pc, row, comb));
            }
        }
        let mut rest = v.clone();
        let mut y = BitVector::zeros(self.rows);
        for (pc, b, bc) in &basis {
            if rest.get(*pc) {
                rest.xor_assign(b);
                y.xor_assign(bc);
            }
        }
        if rest.is_zero() {
            Ok(y)
        } else {
            Err(Error::NoSolution)
        }
    }

    /// One hex string per row, least significant nibble first.
    pub fn to_hex_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                let w = self.row_words(r);
                nibbles_to_hex(self.cols.div_ceil(4), |k| ((w[k / 16] >> ((k % 16) * 4)) & 0xf) as u8)
            })
            .collect()
    }

    pub fn from_hex_rows(rows: usize, cols: usize, hex: &[impl AsRef<str>]) -> Result<BitMatrix> {
        if hex.len() != rows {
            return Err(Error::DimensionMismatch { expected: rows, found: hex.len() });
        }
        let mut m = BitMatrix::zeros(rows, cols);
        for (r, h) in hex.iter().enumerate() {
            let v = BitVector::from_hex(cols, h.as_ref())?;
            m.set_row(r, &v);
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_by_hand() {
        let a = BitMatrix::from_bits(&[&[1, 1], &[0, 1]]);
        let b = BitMatrix::from_bits(&[&[1, 0], &[1, 1]]);
        assert_eq!(a.mul(&b).unwrap(), BitMatrix::from_bits(&[&[0, 1], &[1, 1]]));
    }

    #[test]
    fn inverse_by_hand() {
        let a = BitMatrix::from_bits(&[&[0, 1], &[1, 1]]);
        assert_eq!(a.inverse().unwrap(), BitMatrix::from_bits(&[&[1, 1], &[1, 0]]));
        assert_eq!(BitMatrix::zeros(2, 2).inverse(), Err(Error::Singular));
        assert!(matches!(BitMatrix::zeros(2, 3).inverse(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn solve_cases() {
        let i2 = BitMatrix::identity(2);
        let v = BitVector::from_bits([false, true]);
        assert_eq!(i2.solve_row(&v).unwrap(), v);
        let v = BitVector::from_bits([true, false]);
        assert_eq!(BitMatrix::zeros(2, 2).solve_row(&v), Err(Error::NoSolution));
    }

    #[test]
    fn block_round_trip() {
        let m = BitMatrix::from_fn(70, 90, |r, c| (r * 7 + c * 3) % 5 == 0);
        let b = m.block(3, 60, 10, 25);
        let mut z = BitMatrix::zeros(70, 90);
        z.set_block(3, 60, &b);
        assert_eq!(z.block(3, 60, 10, 25), b);
        assert_eq!(b.get(2, 4), m.get(5, 64));
    }
}
