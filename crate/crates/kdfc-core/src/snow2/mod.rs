//! SNOW 2.0: the GF(2^32) LFSR expressed as a σ-LFSR with 32x32 bit-matrix
//! gains, the two-register FSM and the key/IV schedule.
//!
//! The LFSR words `s_0..s_15` are delay blocks `0..15` (block 0 oldest). Its
//! recurrence is `s_16 = α⁻¹ s_11 + s_2 + α s_0` over GF(2^32) built as
//! GF(2^8)\[x\]/(x^4 + β^23 x^3 + β^245 x^2 + β^48 x + β^239), with β a root of
//! x^8 + x^7 + x^5 + x^3 + 1. Byte `i` of a word (bits `8i..8i+8`) is the
//! coefficient of `x^i`.

mod tables;

use alloc::vec::Vec;

use crate::lfsr::{LfsrState, SigmaConfig};
use crate::linalg::BitMatrix;
use crate::{Error, Gf2Poly, Result};

use tables::{beta_pow, gf_mul, BETA_MOD, MUL_A, MUL_AINV, T};

pub const WORD_BITS: usize = 32;
pub const BLOCKS: usize = 16;
pub const INIT_CLOCKS: usize = 32;

/// Exponents of the characteristic polynomial of the SNOW 2.0 LFSR over GF(2).
pub const SNOW2_CHAR_POLY: &[usize] = &[
    512, 510, 504, 502, 501, 494, 493, 490, 486, 485, 483, 481, 480, 478, 477, 471, 470, 469,
    466, 462, 461, 459, 458, 452, 449, 446, 445, 444, 441, 438, 437, 434, 433, 432, 431, 429,
    427, 424, 423, 420, 419, 414, 412, 411, 409, 405, 402, 400, 399, 398, 396, 395, 393, 392,
    390, 388, 387, 385, 375, 374, 372, 371, 366, 365, 363, 362, 359, 357, 356, 355, 354, 353,
    352, 351, 350, 347, 345, 344, 343, 341, 339, 338, 337, 336, 333, 330, 329, 326, 324, 322,
    319, 310, 307, 306, 305, 304, 303, 301, 299, 298, 297, 296, 295, 294, 293, 292, 291, 289,
    286, 285, 283, 282, 281, 278, 276, 274, 271, 269, 264, 262, 259, 258, 257, 255, 253, 251,
    249, 248, 243, 240, 239, 238, 236, 235, 233, 232, 230, 229, 228, 227, 226, 222, 217, 216,
    215, 214, 213, 210, 208, 206, 203, 201, 199, 193, 190, 184, 179, 178, 177, 175, 174, 173,
    172, 171, 169, 165, 164, 163, 158, 156, 155, 153, 152, 151, 149, 147, 146, 143, 141, 138,
    136, 132, 131, 129, 128, 126, 125, 124, 123, 121, 120, 119, 118, 117, 116, 115, 113, 112,
    111, 109, 105, 104, 103, 102, 98, 97, 94, 93, 89, 88, 87, 81, 78, 76, 75, 73, 72, 70, 69,
    68, 67, 66, 65, 63, 59, 58, 57, 56, 55, 53, 51, 50, 49, 47, 46, 45, 44, 41, 39, 37, 36, 33,
    30, 26, 25, 21, 20, 19, 16, 5, 0,
];

pub fn snow2_char_poly() -> Gf2Poly {
    Gf2Poly::from_exponents(SNOW2_CHAR_POLY)
}

#[inline]
pub fn boxplus(x: u32, y: u32) -> u32 {
    x.wrapping_add(y)
}

/// AES SubBytes on each byte followed by MixColumn, byte 0 taken as the
/// first entry of the column.
#[inline]
pub fn sbox_s(w: u32) -> u32 {
    T[0][(w & 0xff) as usize]
        ^ T[1][((w >> 8) & 0xff) as usize]
        ^ T[2][((w >> 16) & 0xff) as usize]
        ^ T[3][(w >> 24) as usize]
}

#[inline]
pub fn mul_alpha(w: u32) -> u32 {
    (w << 8) ^ MUL_A[(w >> 24) as usize]
}

#[inline]
pub fn mul_alpha_inv(w: u32) -> u32 {
    (w >> 8) ^ MUL_AINV[(w & 0xff) as usize]
}

/// Multiplication by α from the tower definition, one coefficient at a time.
fn tower_mul_alpha(w: u32) -> u32 {
    let c = w.to_le_bytes();
    let g = [beta_pow(239), beta_pow(48), beta_pow(245), beta_pow(23)];
    let mut out = [0u8; 4];
    for i in 0..4 {
        let shifted = if i == 0 { 0 } else { c[i - 1] };
        out[i] = shifted ^ gf_mul(c[3], g[i], BETA_MOD);
    }
    u32::from_le_bytes(out)
}

/// The 32x32 matrices of multiplication by α and by α⁻¹, acting on column
/// vectors: column `j` of `A` is `α·2^j`.
pub fn build_alpha_matrices() -> (BitMatrix, BitMatrix) {
    let a = BitMatrix::from_fn(32, 32, |r, c| (tower_mul_alpha(1 << c) >> r) & 1 == 1);
    let a_inv = a.inverse().expect("multiplication by α is invertible");
    (a, a_inv)
}

/// The public SNOW 2.0 configuration: `B_0 = α`, `B_2 = I`, `B_11 = α⁻¹`.
pub fn snow2_gains() -> SigmaConfig {
    let (a, a_inv) = build_alpha_matrices();
    let mut gains = alloc::vec![BitMatrix::zeros(32, 32); BLOCKS];
    gains[0] = a;
    gains[2] = BitMatrix::identity(32);
    gains[11] = a_inv;
    SigmaConfig::new(WORD_BITS, BLOCKS, gains).expect("well-formed gains")
}

/// Advances the SNOW 2.0 LFSR directly over GF(2^32); returns the dropped word.
pub fn direct_lfsr_step(s: &mut [u32; 16]) -> u32 {
    let out = s[0];
    let fb = mul_alpha(s[0]) ^ s[2] ^ mul_alpha_inv(s[11]);
    s.copy_within(1.., 0);
    s[15] = fb;
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FsmState {
    pub r1: u32,
    pub r2: u32,
}

/// One FSM clock: `f = (d15 ⊞ r1) ⊕ r2`, `r1' = d5 ⊞ r2`, `r2' = S(r1)`.
pub fn fsm_step(fsm: FsmState, d5: u32, d15: u32) -> (FsmState, u32) {
    let f = boxplus(d15, fsm.r1) ^ fsm.r2;
    let next = FsmState { r1: boxplus(d5, fsm.r2), r2: sbox_s(fsm.r1) };
    (next, f)
}

/// A 128- or 256-bit key and a 128-bit IV, as big-endian 32-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snow2Key {
    key: Vec<u32>,
    iv: [u32; 4],
}

impl Snow2Key {
    pub fn new(key: &[u32], iv: &[u32]) -> Result<Self> {
        if key.len() != 4 && key.len() != 8 {
            return Err(Error::InvalidKeyLength(key.len()));
        }
        let iv: [u32; 4] = iv.try_into().map_err(|_| Error::InvalidIvLength(iv.len()))?;
        Ok(Snow2Key { key: key.to_vec(), iv })
    }

    pub fn key(&self) -> &[u32] {
        &self.key
    }

    pub fn iv(&self) -> [u32; 4] {
        self.iv
    }
}

/// LFSR contents, FSM registers and the feedback configuration in use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherState {
    lfsr: LfsrState,
    fsm: FsmState,
    cfg: SigmaConfig,
}

impl CipherState {
    /// Loads key and IV into the delay blocks and clears the FSM. No clocking.
    pub fn load(k: &Snow2Key, cfg: SigmaConfig) -> Result<Self> {
        if cfg.m() != WORD_BITS || cfg.b() != BLOCKS {
            return Err(Error::DimensionMismatch { expected: WORD_BITS * BLOCKS, found: cfg.m() * cfg.b() });
        }
        let mut s = [0u32; 16];
        let key = &k.key;
        if key.len() == 4 {
            for i in 0..4 {
                s[15 - i] = key[i];
                s[11 - i] = !key[i];
                s[7 - i] = key[i];
                s[3 - i] = !key[i];
            }
        } else {
            for i in 0..8 {
                s[15 - i] = key[i];
                s[7 - i] = !key[i];
            }
        }
        let [iv3, iv2, iv1, iv0] = k.iv;
        s[15] ^= iv0;
        s[12] ^= iv1;
        s[10] ^= iv2;
        s[9] ^= iv3;
        let lfsr = LfsrState::from_words(WORD_BITS, s.iter().map(|&w| w as u64).collect())?;
        Ok(CipherState { lfsr, fsm: FsmState::default(), cfg })
    }

    pub fn from_parts(lfsr: LfsrState, fsm: FsmState, cfg: SigmaConfig) -> Result<Self> {
        if cfg.m() != WORD_BITS || cfg.b() != BLOCKS || lfsr.m() != WORD_BITS || lfsr.b() != BLOCKS {
            return Err(Error::DimensionMismatch { expected: WORD_BITS * BLOCKS, found: lfsr.m() * lfsr.b() });
        }
        Ok(CipherState { lfsr, fsm, cfg })
    }

    pub fn lfsr(&self) -> &LfsrState {
        &self.lfsr
    }

    pub fn fsm(&self) -> FsmState {
        self.fsm
    }

    pub fn config(&self) -> &SigmaConfig {
        &self.cfg
    }

    #[inline]
    pub fn word(&self, i: usize) -> u32 {
        self.lfsr.block(i) as u32
    }

    /// FSM output for the current state.
    #[inline]
    pub fn fsm_output(&self) -> u32 {
        boxplus(self.word(15), self.fsm.r1) ^ self.fsm.r2
    }

    /// Clocks LFSR and FSM once and returns the FSM output of the old state.
    /// In init mode the FSM output is added into the LFSR feedback.
    #[inline]
    pub fn clock(&mut self, init_mode: bool) -> u32 {
        let (fsm, f) = fsm_step(self.fsm, self.word(5), self.word(15));
        let mut fb = self.cfg.feedback(self.lfsr.blocks()) as u32;
        if init_mode {
            fb ^= f;
        }
        self.lfsr.shift_in(fb as u64);
        self.fsm = fsm;
        f
    }

    /// Clocks once in normal mode, then outputs `z = F ⊕ s_0`.
    #[inline]
    pub fn next_word(&mut self) -> u32 {
        self.clock(false);
        self.fsm_output() ^ self.word(0)
    }

    pub fn keystream(&mut self, n: usize) -> Vec<u32> {
        (0..n).map(|_| self.next_word()).collect()
    }

    /// Swaps in new gains, keeping LFSR and FSM contents.
    pub fn reconfigure(&mut self, cfg: SigmaConfig) -> Result<()> {
        if cfg.m() != WORD_BITS || cfg.b() != BLOCKS {
            return Err(Error::DimensionMismatch { expected: WORD_BITS * BLOCKS, found: cfg.m() * cfg.b() });
        }
        self.cfg = cfg;
        Ok(())
    }
}

/// Key/IV load followed by the 32 initialization clocks.
pub fn snow2_init(k: &Snow2Key) -> Result<CipherState> {
    let mut st = CipherState::load(k, snow2_gains())?;
    for _ in 0..INIT_CLOCKS {
        st.clock(true);
    }
    Ok(st)
}

pub fn snow2_keystream(state: &mut CipherState, n: usize) -> Vec<u32> {
    state.keystream(n)
}
