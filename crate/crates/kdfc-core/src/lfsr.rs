//! The word-oriented σ-LFSR: `b` delay blocks of `m`-bit words with
//! matrix feedback gains.
//!
//! A step computes `x_{n+b} = B_0 x_n + B_1 x_{n+1} + ... + B_{b-1} x_{n+b-1}`,
//! the gains acting on words as column vectors, outputs `x_n` and shifts.
//! Stacking the state as `(x_n, ..., x_{n+b-1})`, the step is `s ↦ C s`
//! with `C` the M-companion matrix from [`SigmaConfig::config_matrix`];
//! in the crate-wide row convention that is `s ↦ s·Cᵀ`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{BitMatrix, BitVector};
use crate::{Error, Result};

/// A feedback configuration: gains `B_0..B_{b-1}`, each `m x m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaConfig {
    m: usize,
    b: usize,
    gains: Vec<BitMatrix>,
    // Byte-indexed lookup tables for the nonzero gains: tables[k][byte_pos][byte].
    active: Vec<usize>,
    tables: Vec<Vec<[u64; 256]>>,
}

impl SigmaConfig {
    pub fn new(m: usize, b: usize, gains: Vec<BitMatrix>) -> Result<Self> {
        if m == 0 || m > 64 {
            return Err(Error::DegreeOutOfRange { degree: m, min: 1, max: 64 });
        }
        if b == 0 || gains.len() != b {
            return Err(Error::DimensionMismatch { expected: b, found: gains.len() });
        }
        for g in &gains {
            if g.rows() != m || g.cols() != m {
                return Err(Error::DimensionMismatch { expected: m, found: g.rows().max(g.cols()) });
            }
        }
        let mut active = Vec::new();
        let mut tables = Vec::new();
        for (i, g) in gains.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            active.push(i);
            tables.push(byte_tables(g));
        }
        Ok(SigmaConfig { m, b, gains, active, tables })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn gains(&self) -> &[BitMatrix] {
        &self.gains
    }

    pub fn gain(&self, i: usize) -> &BitMatrix {
        &self.gains[i]
    }

    /// Indices of the gains that are not identically zero.
    pub fn nonzero_gains(&self) -> &[usize] {
        &self.active
    }

    /// The `mb x mb` M-companion matrix: identity blocks above the block
    /// diagonal and `(B_0 ... B_{b-1})` as the last block row.
    pub fn config_matrix(&self) -> BitMatrix {
        let (m, b) = (self.m, self.b);
        let mut c = BitMatrix::zeros(m * b, m * b);
        for i in 0..b - 1 {
            for k in 0..m {
                c.set(i * m + k, (i + 1) * m + k, true);
            }
        }
        for (i, g) in self.gains.iter().enumerate() {
            c.set_block((b - 1) * m, i * m, g);
        }
        c
    }

    /// Reads the gains back from an M-companion matrix, validating its shape.
    pub fn from_config_matrix(c: &BitMatrix, m: usize) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::NotSquare { rows: c.rows(), cols: c.cols() });
        }
        if m == 0 || c.rows() % m != 0 {
            return Err(Error::DimensionMismatch { expected: m, found: c.rows() });
        }
        let n = c.rows();
        let b = n / m;
        for r in 0..(b - 1) * m {
            let expect = BitVector::unit(n, r + m);
            if c.row(r) != expect {
                return Err(Error::NotMCompanion);
            }
        }
        let gains = (0..b).map(|i| c.block((b - 1) * m, i * m, m, m)).collect();
        Self::new(m, b, gains)
    }

    /// `B_0 x_n + ... + B_{b-1} x_{n+b-1}` for the given delay blocks.
    #[inline]
    pub fn feedback(&self, blocks: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (k, &i) in self.active.iter().enumerate() {
            let t = &self.tables[k];
            let mut x = blocks[i];
            let mut pos = 0;
            while x != 0 {
                acc ^= t[pos][(x & 0xff) as usize];
                x >>= 8;
                pos += 1;
            }
        }
        acc
    }
}

/// For each byte position, the XOR of the gain columns selected by that byte.
fn byte_tables(g: &BitMatrix) -> Vec<[u64; 256]> {
    let m = g.rows();
    let cols: Vec<u64> = (0..m).map(|c| g.column(c).to_u64()).collect();
    let mut out = Vec::new();
    for base in (0..m).step_by(8) {
        let mut t = [0u64; 256];
        for x in 1usize..256 {
            let low = x.trailing_zeros() as usize;
            let col = cols.get(base + low).copied().unwrap_or(0);
            t[x] = t[x & (x - 1)] ^ col;
        }
        out.push(t);
    }
    out
}

/// The delay-block contents `(x_n, ..., x_{n+b-1})`; block 0 is the oldest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LfsrState {
    m: usize,
    blocks: Vec<u64>,
}

impl LfsrState {
    pub fn zero(m: usize, b: usize) -> Self {
        assert!((1..=64).contains(&m));
        LfsrState { m, blocks: vec![0; b] }
    }

    pub fn from_words(m: usize, blocks: Vec<u64>) -> Result<Self> {
        if m == 0 || m > 64 {
            return Err(Error::DegreeOutOfRange { degree: m, min: 1, max: 64 });
        }
        let mask = word_mask(m);
        if blocks.iter().any(|&w| w & !mask != 0) {
            return Err(Error::DimensionMismatch { expected: m, found: 64 });
        }
        Ok(LfsrState { m, blocks })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> u64 {
        self.blocks[i]
    }

    pub fn set_block(&mut self, i: usize, w: u64) {
        self.blocks[i] = w & word_mask(self.m);
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&w| w == 0)
    }

    /// Drops the oldest block, appends `w` and returns the dropped block.
    #[inline]
    pub fn shift_in(&mut self, w: u64) -> u64 {
        let out = self.blocks[0];
        self.blocks.copy_within(1.., 0);
        let last = self.blocks.len() - 1;
        self.blocks[last] = w & word_mask(self.m);
        out
    }

    /// Advances one step under `cfg` and returns the output word `x_n`.
    #[inline]
    pub fn step(&mut self, cfg: &SigmaConfig) -> u64 {
        debug_assert_eq!((cfg.m, cfg.b), (self.m, self.blocks.len()));
        let fb = cfg.feedback(&self.blocks);
        self.shift_in(fb)
    }

    /// The stacked state vector; word `i` occupies coordinates `i*m..(i+1)*m`.
    pub fn to_vector(&self) -> BitVector {
        let m = self.m;
        BitVector::from_fn(m * self.blocks.len(), |k| (self.blocks[k / m] >> (k % m)) & 1 == 1)
    }

    pub fn from_vector(m: usize, v: &BitVector) -> Result<Self> {
        if m == 0 || v.len() % m != 0 {
            return Err(Error::DimensionMismatch { expected: m, found: v.len() });
        }
        let blocks = (0..v.len() / m).map(|i| v.slice(i * m, m).to_u64()).collect();
        Self::from_words(m, blocks)
    }
}

#[inline]
pub(crate) fn word_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// One step as a pure function.
pub fn lfsr_step(cfg: &SigmaConfig, s: &LfsrState) -> (LfsrState, u64) {
    let mut next = s.clone();
    let out = next.step(cfg);
    (next, out)
}

/// Checks one step against multiplying the stacked state by the transposed
/// configuration matrix.
pub fn state_vector_equiv(cfg: &SigmaConfig, s: &LfsrState) -> bool {
    let (next, _) = lfsr_step(cfg, s);
    let via_matrix = cfg
        .config_matrix()
        .transpose()
        .vec_mul(&s.to_vector())
        .expect("state width matches configuration");
    next.to_vector() == via_matrix
}

/// Largest `mb` accepted by [`period`].
pub const PERIOD_LIMIT: usize = 24;

/// Least `t > 0` with `state(t) = state(0)`.
pub fn period(cfg: &SigmaConfig, s0: &LfsrState) -> Result<u64> {
    let n = cfg.m * cfg.b;
    if n > PERIOD_LIMIT {
        return Err(Error::SizeGuard { what: "state size for period search", limit: PERIOD_LIMIT });
    }
    if s0.is_zero() {
        return Err(Error::ZeroState);
    }
    let limit = 1u64 << n;
    let mut s = s0.clone();
    for t in 1..=limit {
        s.step(cfg);
        if s == *s0 {
            return Ok(t);
        }
    }
    Err(Error::Aperiodic { steps: limit })
}

/// Period of every nonzero state, as `period -> number of states`.
///
/// Walks each cycle of the state space once. Fails with `Aperiodic` if some
/// state is not on a cycle (singular `B_0`).
pub fn cycle_lengths(cfg: &SigmaConfig) -> Result<BTreeMap<u64, u64>> {
    let (m, b) = (cfg.m, cfg.b);
    let n = m * b;
    if n > PERIOD_LIMIT {
        return Err(Error::SizeGuard { what: "state size for cycle search", limit: PERIOD_LIMIT });
    }
    let pack = |s: &LfsrState| s.blocks.iter().enumerate().fold(0usize, |acc, (i, &w)| acc | (w as usize) << (i * m));
    let unpack = |x: usize| LfsrState {
        m,
        blocks: (0..b).map(|i| ((x >> (i * m)) as u64) & word_mask(m)).collect(),
    };
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut out = BTreeMap::new();
    for start in 1..total {
        if seen[start] {
            continue;
        }
        let mut s = unpack(start);
        let mut len = 0u64;
        loop {
            s.step(cfg);
            len += 1;
            let x = pack(&s);
            if x == start {
                break;
            }
            if seen[x] || len as usize >= total {
                return Err(Error::Aperiodic { steps: len });
            }
            seen[x] = true;
        }
        seen[start] = true;
        *out.entry(len).or_insert(0) += len;
    }
    Ok(out)
}
