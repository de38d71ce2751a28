use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A vector over GF(2). Coordinate `i` lives in bit `i % 64` of word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    /// The vector `(0, ..., 0, 1)`.
    pub fn unit_last(len: usize) -> Self {
        assert!(len > 0, "unit_last of an empty vector");
        Self::unit(len, len - 1)
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut v = Self::zeros(0);
        for b in bits {
            v.push(b);
        }
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from packed words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let n = words_for(len);
        let mut w = vec![0; n];
        let take = n.min(words.len());
        w[..take].copy_from_slice(&words[..take]);
        let mut v = BitVector { len, words: w };
        v.clear_tail();
        v
    }

    /// The low `len` bits of `word`, bit `i` being coordinate `i`.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD);
        Self::from_words(len, &[word])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Coordinates 0..64 as a word. Panics if the vector is longer than 64.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let m = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % WORD == 0 {
            self.words.push(0);
        }
        self.len += 1;
        if bit {
            self.set(self.len - 1, true);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
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

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "length mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        BitVector { len: self.len, words }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// Coordinates `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for (k, w) in out.words.iter_mut().enumerate() {
            *w = self.bits_at(start + k * WORD);
        }
        out.clear_tail();
        out
    }

    /// 64 bits starting at coordinate `pos`, zero-padded past the end.
    #[inline]
    pub(crate) fn bits_at(&self, pos: usize) -> u64 {
        let wi = pos / WORD;
        let sh = pos % WORD;
        let lo = self.words.get(wi).copied().unwrap_or(0);
        if sh == 0 {
            lo
        } else {
            let hi = self.words.get(wi + 1).copied().unwrap_or(0);
            (lo >> sh) | (hi << (WORD - sh))
        }
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        for b in other.iter() {
            out.push(b);
        }
        out
    }

    /// Hex with the least significant nibble (coordinates 0..4) first.
    pub fn to_hex(&self) -> String {
        nibbles_to_hex(self.len.div_ceil(4), |k| {
            ((self.words[k / 16] >> ((k % 16) * 4)) & 0xf) as u8
        })
    }

    pub fn from_hex(len: usize, s: &str) -> Result<Self> {
        let nibbles = len.div_ceil(4);
        if s.len() != nibbles {
            return Err(Error::Hex(alloc::format!(
                "expected {nibbles} hex digits for {len} bits, got {}",
                s.len()
            )));
        }
        let mut v = Self::zeros(len);
        for (k, c) in s.chars().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::Hex(alloc::format!("bad digit {c:?}")))? as u64;
            v.words[k / 16] |= d << ((k % 16) * 4);
        }
        if v.words.last().is_some_and(|&w| w & !tail_mask(len) != 0) {
            return Err(Error::Hex(String::from("bits set beyond the vector length")));
        }
        Ok(v)
    }

    #[inline]
    pub(crate) fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }
}

pub(crate) fn nibbles_to_hex(n: usize, nibble: impl Fn(usize) -> u8) -> String {
    const DIGITS: &[u8; 16] = b"0123456789abcdef";
    let mut s = String::with_capacity(n);
    for k in 0..n {
        s.push(DIGITS[nibble(k) as usize] as char);
    }
    s
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}
