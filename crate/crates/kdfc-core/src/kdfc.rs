//! KDFC-SNOW: SNOW 2.0 whose LFSR gains are replaced by a configuration
//! derived from the key.
//!
//! Initialization loads key and IV as in SNOW 2.0 and runs the 32 init-mode
//! clocks, recording each FSM output. The last `480 - k` of those words feed
//! the online iterations of the configuration generator, starting from a
//! published `Y` that already has `k` iterations applied. The resulting gains
//! replace the SNOW 2.0 ones, and the first `warmup` keystream words are
//! discarded.

use alloc::vec::Vec;

use crate::confgen::{generate_config, FillBits, YMatrix};
use crate::lfsr::SigmaConfig;
use crate::poly::PrimitiveTable;
use crate::snow2::{snow2_char_poly, snow2_gains, CipherState, Snow2Key, BLOCKS, INIT_CLOCKS, WORD_BITS};
use crate::{Error, Gf2Poly, Result};

pub const DEFAULT_OFFLINE_ITERATIONS: usize = 468;
pub const TOTAL_ITERATIONS: usize = WORD_BITS * BLOCKS - WORD_BITS;
pub const DEFAULT_WARMUP: usize = 32;

#[derive(Clone, Debug)]
pub struct KdfcParams<'a> {
    pub key: Snow2Key,
    /// Published `Y` after the offline iterations; its width fixes `k`.
    pub y_init: &'a YMatrix,
    pub table: &'a PrimitiveTable,
    /// Characteristic polynomial of the derived configuration.
    pub target: Gf2Poly,
    /// Keystream words discarded after reconfiguration.
    pub warmup: usize,
}

impl<'a> KdfcParams<'a> {
    pub fn new(key: Snow2Key, y_init: &'a YMatrix, table: &'a PrimitiveTable) -> Self {
        KdfcParams { key, y_init, table, target: snow2_char_poly(), warmup: DEFAULT_WARMUP }
    }

    pub fn offline_iterations(&self) -> usize {
        self.y_init.iterations()
    }

    pub fn online_iterations(&self) -> usize {
        TOTAL_ITERATIONS.saturating_sub(self.offline_iterations())
    }
}

/// The SNOW 2.0 load and init clocks; returns the state and the FSM outputs.
fn load_and_capture(key: &Snow2Key) -> Result<(CipherState, Vec<u32>)> {
    let mut st = CipherState::load(key, snow2_gains())?;
    let captured = (0..INIT_CLOCKS).map(|_| st.clock(true)).collect();
    Ok((st, captured))
}

/// Fill bits for the online iterations taken from the captured FSM outputs.
pub fn online_fill(key: &Snow2Key, offline: usize) -> Result<FillBits> {
    let (_, captured) = load_and_capture(key)?;
    fill_from_captured(&captured, offline)
}

fn fill_from_captured(captured: &[u32], offline: usize) -> Result<FillBits> {
    let online = TOTAL_ITERATIONS
        .checked_sub(offline)
        .ok_or(Error::DimensionMismatch { expected: TOTAL_ITERATIONS, found: offline })?;
    if online > captured.len() {
        return Err(Error::FillExhausted { iteration: offline + captured.len() + 1 });
    }
    let words: Vec<u64> = captured[captured.len() - online..].iter().map(|&w| w as u64).collect();
    Ok(FillBits::from_row_words(WORD_BITS, offline + 1, &words))
}

/// The key-dependent configuration alone.
pub fn derive_config(p: &KdfcParams<'_>) -> Result<SigmaConfig> {
    let fill = online_fill(&p.key, p.offline_iterations())?;
    generate_config(WORD_BITS, BLOCKS, &p.target, p.y_init, &fill, p.table)
}

pub fn kdfc_init(p: &KdfcParams<'_>) -> Result<CipherState> {
    if p.y_init.m() != WORD_BITS {
        return Err(Error::DimensionMismatch { expected: WORD_BITS, found: p.y_init.m() });
    }
    let (mut st, captured) = load_and_capture(&p.key)?;
    let fill = fill_from_captured(&captured, p.offline_iterations())?;
    let cfg = generate_config(WORD_BITS, BLOCKS, &p.target, p.y_init, &fill, p.table)?;
    st.reconfigure(cfg)?;
    for _ in 0..p.warmup {
        st.next_word();
    }
    Ok(st)
}

pub fn kdfc_keystream(state: &mut CipherState, n: usize) -> Vec<u32> {
    state.keystream(n)
}

/// Swaps the gains of a running state.
pub fn reconfigure(mut state: CipherState, cfg: SigmaConfig) -> Result<CipherState> {
    state.reconfigure(cfg)?;
    Ok(state)
}
