//! Polynomials over GF(2).

mod mersenne;
mod primitive;
mod table;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

pub use primitive::{euler_phi_mersenne, is_irreducible, is_primitive, mersenne_factors};
pub use table::{primitive_poly, PrimitiveTable, TABLE_HEADER_PREFIX};

/// A polynomial over GF(2); bit `i` of the packed words is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Gf2Poly { words: vec![2] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        Gf2Poly { words }
    }

    /// Sum of `x^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Gf2Poly::zero();
        for &e in exps {
            p.flip_coeff(e);
        }
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Gf2Poly { words };
        p.normalize();
        p
    }

    pub fn from_u64(w: u64) -> Self {
        Self::from_words(vec![w])
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn flip_coeff(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.normalize();
    }

    pub fn set_coeff(&mut self, i: usize, bit: bool) {
        if self.coeff(i) != bit {
            self.flip_coeff(i);
        }
    }

    /// Exponents of the nonzero terms, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate().rev() {
            let mut w = w;
            while w != 0 {
                let b = 63 - w.leading_zeros() as usize;
                out.push(wi * 64 + b);
                w ^= 1 << b;
            }
        }
        out
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(&short.words) {
            *a ^= *b;
        }
        Gf2Poly::from_words(words)
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        let mut out = vec![0u64; self.words.len() + other.words.len()];
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                xor_shifted(&mut out, &other.words, wi * 64 + b);
            }
        }
        Gf2Poly::from_words(out)
    }

    pub fn square(&self) -> Gf2Poly {
        let mut out = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            out.push(spread(w as u32));
            out.push(spread((w >> 32) as u32));
        }
        Gf2Poly::from_words(out)
    }

    pub fn div_rem(&self, d: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut r = self.words.clone();
        let mut q = Vec::new();
        let mut top = self.degree();
        while let Some(t) = top {
            if t < dd {
                break;
            }
            let shift = t - dd;
            if q.len() <= shift / 64 {
                q.resize(shift / 64 + 1, 0);
            }
            q[shift / 64] ^= 1 << (shift % 64);
            xor_shifted(&mut r, &d.words, shift);
            top = degree_of(&r, t);
        }
        Ok((Gf2Poly::from_words(q), Gf2Poly::from_words(r)))
    }

    pub fn rem(&self, d: &Gf2Poly) -> Result<Gf2Poly> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut r = self.words.clone();
        let mut top = self.degree();
        while let Some(t) = top {
            if t < dd {
                break;
            }
            xor_shifted(&mut r, &d.words, t - dd);
            top = degree_of(&r, t);
        }
        Ok(Gf2Poly::from_words(r))
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn mulmod(&self, other: &Gf2Poly, m: &Gf2Poly) -> Result<Gf2Poly> {
        self.mul(other).rem(m)
    }

    /// `self^e mod m`, with `e` given as little-endian 64-bit limbs.
    pub fn powmod_limbs(&self, e: &[u64], m: &Gf2Poly) -> Result<Gf2Poly> {
        let mut acc = Gf2Poly::one().rem(m)?;
        let base = self.rem(m)?;
        for &limb in e.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.square().rem(m)?;
                if (limb >> bit) & 1 == 1 {
                    acc = acc.mulmod(&base, m)?;
                }
            }
        }
        Ok(acc)
    }

    pub fn powmod(&self, e: u128, m: &Gf2Poly) -> Result<Gf2Poly> {
        self.powmod_limbs(&[e as u64, (e >> 64) as u64], m)
    }

    /// `x^(2^k) mod m` by repeated squaring.
    pub fn x_pow_pow2_mod(k: usize, m: &Gf2Poly) -> Result<Gf2Poly> {
        let mut acc = Gf2Poly::x().rem(m)?;
        for _ in 0..k {
            acc = acc.square().rem(m)?;
        }
        Ok(acc)
    }

    /// `x^n p(1/x)`: the coefficient list of degree `n` read backwards.
    pub fn reverse(&self, n: usize) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        for e in self.exponents() {
            assert!(e <= n, "degree exceeds reversal width");
            out.flip_coeff(n - e);
        }
        out
    }

    /// Evaluation at a point of GF(2).
    pub fn eval(&self, at: bool) -> bool {
        if at {
            self.weight() % 2 == 1
        } else {
            self.coeff(0)
        }
    }
}

fn degree_of(words: &[u64], upper: usize) -> Option<usize> {
    let mut wi = upper / 64;
    loop {
        let w = words.get(wi).copied().unwrap_or(0);
        if w != 0 {
            return Some(wi * 64 + 63 - w.leading_zeros() as usize);
        }
        if wi == 0 {
            return None;
        }
        wi -= 1;
    }
}

/// `acc ^= src << shift`, growing `acc` as needed.
pub(crate) fn xor_shifted(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    let need = ws + src.len() + usize::from(bs != 0);
    if acc.len() < need {
        acc.resize(need, 0);
    }
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            acc[ws + i] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            acc[ws + i] ^= w << bs;
            acc[ws + i + 1] ^= w >> (64 - bs);
        }
    }
}

/// Interleaves zero bits: bit `i` of `x` moves to bit `2i`.
fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.exponents();
        if exps.is_empty() {
            return f.write_str("0");
        }
        for (i, e) in exps.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

/// Accepts either an exponent list (`"4,1,0"`) or a sum of terms (`"x^4 + x + 1"`).
impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: String| Error::Parse { line: 1, msg };
        if s.is_empty() {
            return Err(bad(String::from("empty polynomial")));
        }
        if s == "0" {
            return Ok(Gf2Poly::zero());
        }
        let mut exps = Vec::new();
        if s.contains('x') {
            for term in s.split('+') {
                let t = term.trim();
                let e = match t {
                    "1" => 0,
                    "x" => 1,
                    _ => t
                        .strip_prefix("x^")
                        .and_then(|e| e.trim().parse::<usize>().ok())
                        .ok_or_else(|| bad(alloc::format!("bad term {t:?}")))?,
                };
                exps.push(e);
            }
        } else {
            for tok in s.split(',') {
                let t = tok.trim();
                exps.push(t.parse::<usize>().map_err(|_| bad(alloc::format!("bad exponent {t:?}")))?);
            }
        }
        Ok(Gf2Poly::from_exponents(&exps))
    }
}
