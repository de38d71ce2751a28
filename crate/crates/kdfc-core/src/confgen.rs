//! Generation of a σ-LFSR configuration whose characteristic polynomial is a
//! prescribed primitive `p` of degree `mb`.
//!
//! An `m`-row matrix `Y` is grown one column per iteration. Iteration `i`
//! (`1..=mb-m`) takes the companion `A` of a primitive polynomial of degree
//! equal to the current width, maps the active row `l = i mod m` to
//! `(0, ..., 0, 1)` through a polynomial in `A`, and appends one fill bit to
//! each other row. The finished `Y` (`m x mb`) defines
//! `Q = [Y; Y·P; ...; Y·P^(b-1)]` and the configuration `C = Q·P·Q⁻¹`, which
//! is M-companion and similar to `P = companion(p)`.
//!
//! The first `k` iterations can run offline and be published; the remaining
//! ones consume secret fill bits.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::lfsr::SigmaConfig;
use crate::linalg::{companion_matrix, companion_step, krylov_matrix, low_coeffs, BitMatrix, BitVector};
use crate::poly::{euler_phi_mersenne, PrimitiveTable};
use crate::{Error, Gf2Poly, Result};

/// The growing `m x (m + i)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YMatrix {
    rows: Vec<BitVector>,
}

impl YMatrix {
    pub fn identity(m: usize) -> Self {
        YMatrix { rows: (0..m).map(|i| BitVector::unit(m, i)).collect() }
    }

    /// Wraps an `m x w` matrix with `w >= m`; it must have full row rank.
    pub fn from_matrix(y: &BitMatrix) -> Result<Self> {
        if y.rows() == 0 || y.cols() < y.rows() {
            return Err(Error::DimensionMismatch { expected: y.rows(), found: y.cols() });
        }
        if y.rank() != y.rows() {
            return Err(Error::RankLoss { iteration: y.cols() - y.rows() });
        }
        Ok(YMatrix { rows: y.rows_iter().collect() })
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(&self.rows).expect("rows have equal width")
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    /// Number of iterations already applied.
    pub fn iterations(&self) -> usize {
        self.width() - self.m()
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }
}

/// Fill bits: for each iteration, `m - 1` bits packed into a word. Bit `j`
/// goes to the `j`-th row other than the active one, in ascending row order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FillBits {
    words: Vec<u64>,
}

impl FillBits {
    pub fn new(words: Vec<u64>) -> Self {
        FillBits { words }
    }

    pub fn empty() -> Self {
        FillBits::default()
    }

    /// Per-row words: bit `t` of the word for iteration `first + idx` is the
    /// bit appended to row `t`. The active row's bit is dropped.
    pub fn from_row_words(m: usize, first: usize, words: &[u64]) -> Self {
        let words = words
            .iter()
            .enumerate()
            .map(|(idx, &w)| drop_bit(w, (first + idx) % m))
            .collect();
        FillBits { words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<u64> {
        self.words.get(idx).copied()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

fn drop_bit(w: u64, l: usize) -> u64 {
    let low = w & ((1u64 << l) - 1);
    let high = if l >= 63 { 0 } else { (w >> (l + 1)) << l };
    low | high
}

/// The polynomial used at the iteration where `Y` has `width` columns.
/// Width 1 only occurs when `m = 1`; the companion is then `[1]`.
pub fn iteration_poly(table: &PrimitiveTable, width: usize) -> Result<Gf2Poly> {
    if width == 1 {
        Ok(Gf2Poly::from_exponents(&[1, 0]))
    } else {
        table.get(width).cloned()
    }
}

/// Coefficients `y` of `Λ = Σ y_j P^j` with `c·Λ = (0, ..., 0, 1)`, where `P`
/// is the companion of `p`.
fn lin_solver_coeffs(c: &BitVector, p: &Gf2Poly) -> Result<BitVector> {
    let n = c.len();
    let low = low_coeffs(p);
    let mut rows = Vec::with_capacity(n);
    let mut v = c.clone();
    for _ in 0..n {
        let next = companion_step(&v, &low);
        rows.push(v);
        v = next;
    }
    BitMatrix::from_rows(&rows)?.solve_row(&BitVector::unit_last(n))
}

/// `v·Λ` for `Λ = Σ y_j P^j`.
fn apply_poly(v: &BitVector, y: &BitVector, low: &BitVector) -> BitVector {
    let mut acc = BitVector::zeros(v.len());
    let mut cur = v.clone();
    let last = y.iter_ones().last();
    for j in 0..y.len() {
        if y.get(j) {
            acc.xor_assign(&cur);
        }
        if Some(j) == last {
            break;
        }
        cur = companion_step(&cur, low);
    }
    acc
}

/// Returns `Λ = Σ_j y_j A^j`, where `y` solves `y·K = e` for the Krylov matrix
/// `K` of `c` under `a`. Then `c·Λ = e = (0, ..., 0, 1)`.
pub fn lin_solver(c: &BitVector, a: &BitMatrix) -> Result<BitMatrix> {
    let n = c.len();
    let k = krylov_matrix(c, a, n)?;
    let e = BitVector::unit_last(n);
    let y = k.solve_row(&e)?;
    let mut lambda = BitMatrix::zeros(n, n);
    let mut pow = BitMatrix::identity(n);
    for j in 0..n {
        if y.get(j) {
            lambda = lambda.add(&pow)?;
        }
        pow = pow.mul(a)?;
    }
    assert_eq!(lambda.vec_mul(c)?, e, "lin_solver post-condition");
    Ok(lambda)
}

/// One iteration with index `i` (1-based). `p` must have degree `y.width()`.
pub fn y_iterate(y: &YMatrix, i: usize, p: &Gf2Poly, fill: u64) -> Result<YMatrix> {
    let m = y.m();
    let n = y.width();
    if p.degree() != Some(n) {
        return Err(Error::DimensionMismatch { expected: n, found: p.degree().unwrap_or(0) });
    }
    let l = i % m;
    let coeffs = lin_solver_coeffs(&y.rows[l], p).map_err(|_| Error::RankLoss { iteration: i })?;
    let low = low_coeffs(p);
    let mut rows = Vec::with_capacity(m);
    let mut j = 0;
    for (t, r) in y.rows.iter().enumerate() {
        if t == l {
            rows.push(BitVector::unit_last(n + 1));
            continue;
        }
        let mut nr = apply_poly(r, &coeffs, &low);
        nr.push((fill >> j) & 1 == 1);
        j += 1;
        rows.push(nr);
    }
    let out = YMatrix { rows };
    if out.to_matrix().rank() != m {
        return Err(Error::RankLoss { iteration: i });
    }
    Ok(out)
}

/// Runs iterations `1..=k` from `init` (full-rank `m x m`).
pub fn y_offline(b: usize, k: usize, fill: &FillBits, init: &BitMatrix, table: &PrimitiveTable) -> Result<YMatrix> {
    let m = init.rows();
    if !init.is_square() {
        return Err(Error::NotSquare { rows: init.rows(), cols: init.cols() });
    }
    if k > m * b - m {
        return Err(Error::DimensionMismatch { expected: m * b - m, found: k });
    }
    let y = YMatrix::from_matrix(init)?;
    continue_iterations(y, k, fill, table)
}

/// Applies `count` further iterations, taking fill bits from `fill` in order.
pub fn continue_iterations(mut y: YMatrix, count: usize, fill: &FillBits, table: &PrimitiveTable) -> Result<YMatrix> {
    let start = y.iterations();
    for idx in 0..count {
        let i = start + idx + 1;
        let f = fill.get(idx).ok_or(Error::FillExhausted { iteration: i })?;
        let p = iteration_poly(table, y.width())?;
        y = y_iterate(&y, i, &p, f)?;
    }
    Ok(y)
}

/// Moves the row equal to `(0, ..., 0, 1)` to the front, keeping the others in order.
pub fn normalize_rows(y: &YMatrix) -> YMatrix {
    let e = BitVector::unit_last(y.width());
    match y.rows.iter().position(|r| *r == e) {
        Some(pos) if pos != 0 => {
            let mut rows = y.rows.clone();
            let r = rows.remove(pos);
            rows.insert(0, r);
            YMatrix { rows }
        }
        _ => y.clone(),
    }
}

/// `Q`, whose row `j*m + t` is `Y[t]·P^j`.
pub fn build_q(y: &YMatrix, p: &Gf2Poly) -> Result<BitMatrix> {
    let m = y.m();
    let n = y.width();
    if p.degree() != Some(n) || n % m != 0 {
        return Err(Error::DimensionMismatch { expected: n, found: p.degree().unwrap_or(0) });
    }
    let b = n / m;
    let low = low_coeffs(p);
    let mut q = BitMatrix::zeros(n, n);
    let mut cur: Vec<BitVector> = y.rows.clone();
    for j in 0..b {
        for (t, r) in cur.iter_mut().enumerate() {
            q.set_row(j * m + t, r);
            *r = companion_step(r, &low);
        }
    }
    Ok(q)
}

/// `C = Q·P·Q⁻¹`, read back as a configuration with word width `m`.
pub fn assemble_config(q: &BitMatrix, p: &Gf2Poly, m: usize) -> Result<SigmaConfig> {
    let qinv = q.inverse()?;
    let c = q.mul(&companion_matrix(p)?)?.mul(&qinv)?;
    SigmaConfig::from_config_matrix(&c, m)
}

/// The full pipeline from a published `Y` with `k` iterations applied.
pub fn generate_config(
    m: usize,
    b: usize,
    p: &Gf2Poly,
    y_init: &YMatrix,
    online: &FillBits,
    table: &PrimitiveTable,
) -> Result<SigmaConfig> {
    if y_init.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: y_init.m() });
    }
    if p.degree() != Some(m * b) {
        return Err(Error::DimensionMismatch { expected: m * b, found: p.degree().unwrap_or(0) });
    }
    let remaining = (m * b)
        .checked_sub(y_init.width())
        .ok_or(Error::DimensionMismatch { expected: m * b, found: y_init.width() })?;
    let y = continue_iterations(y_init.clone(), remaining, online, table)?;
    let y = normalize_rows(&y);
    let q = build_q(&y, p)?;
    assemble_config(&q, p, m)
}

/// `|GL(m, 2)| / (2^m - 1) · φ(2^(mb) - 1) / (mb) · 2^(m(m-1)(b-1))`.
pub fn count_configurations(m: usize, b: usize) -> Result<BigUint> {
    let n = m * b;
    let phi = BigUint::from(euler_phi_mersenne(n)?);
    let mut gl = BigUint::one();
    for i in 0..m {
        gl *= (BigUint::one() << m) - (BigUint::one() << i);
    }
    let num = gl * phi * (BigUint::one() << (m * (m - 1) * (b - 1)));
    let den = ((BigUint::one() << m) - BigUint::one()) * BigUint::from(n);
    debug_assert_eq!(&num % &den, BigUint::from(0u8));
    Ok(num / den)
}
