//! Symbolic (ANF) analysis of the configuration generator.
//!
//! The free rows of the final `Y` become Boolean variables; `Q`, its inverse
//! via minors and `C = Q·P·Q⁻¹` are computed as matrices of ANF polynomials,
//! and the degrees of the minors and of `C` are checked against their
//! expected values.
//!
//! Row 0 of `Y` is `(0, ..., 0, 1)`. Row `t` (`1..m`) holds variables
//! `v_{t,1..mb}`, with `v_{t,s}` at flat index `(t-1)·mb + (s-1)` and shown
//! as `x{index+1}`. For `m = 2` that is `x1..x_mb` for the single free row.

mod anf;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub use anf::{AnfPoly, Monomial};

use crate::linalg::{BitMatrix, BitVector};
use crate::{Error, Gf2Poly, Result};

/// A matrix of ANF polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    data: Vec<AnfPoly>,
}

impl SymMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SymMatrix { rows, cols, data: vec![AnfPoly::zero(); rows * cols] }
    }

    pub fn from_bitmatrix(m: &BitMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) {
                    out.set(r, c, AnfPoly::one());
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AnfPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: AnfPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[AnfPoly] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = SymMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = AnfPoly::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// The rows listed in `order`, in that order.
    pub fn select_rows(&self, order: &[usize]) -> SymMatrix {
        let mut out = SymMatrix::zeros(order.len(), self.cols);
        for (i, &r) in order.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> SymMatrix {
        let mut out = SymMatrix::zeros(h, w);
        for r in 0..h {
            for c in 0..w {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> SymMatrix {
        let mut out = SymMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Numeric value under an assignment of the variables.
    pub fn eval(&self, x: u128) -> BitMatrix {
        BitMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).eval(x))
    }

    /// Largest entry degree; `None` if every entry is zero.
    pub fn theta(&self) -> Option<usize> {
        self.data.iter().filter_map(|p| p.degree()).max()
    }
}

/// `v·P` for a row of linear forms and the companion `P` of `p`.
fn companion_step_sym(v: &[AnfPoly], p: &Gf2Poly) -> Vec<AnfPoly> {
    let n = v.len();
    let mut out: Vec<AnfPoly> = v[1..].to_vec();
    let mut fb = AnfPoly::zero();
    for (i, x) in v.iter().enumerate() {
        if p.coeff(i) {
            fb.add_assign(x);
        }
    }
    out.push(fb);
    debug_assert_eq!(out.len(), n);
    out
}

/// Largest `mb` accepted by the symbolic routines.
pub const SYMBOLIC_LIMIT: usize = 12;
/// Largest `mb` accepted by the lemma and theorem checks, which need all minors.
pub const MINOR_LIMIT: usize = 10;

/// The symbolic `Q` for parameters `(m, b)` and the degree-`mb` polynomial `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicQ {
    m: usize,
    b: usize,
    p: Gf2Poly,
    q: SymMatrix,
}

/// Flat variable index of `v_{t,s}` (`t >= 1`, `s >= 1`).
pub fn var_index(mb: usize, t: usize, s: usize) -> usize {
    (t - 1) * mb + (s - 1)
}

/// Builds `Q` with row `j·m + t` equal to `Y[t]·P^j`.
pub fn build_symbolic_q(m: usize, b: usize, p: &Gf2Poly) -> Result<SymbolicQ> {
    let n = m * b;
    if n > SYMBOLIC_LIMIT {
        return Err(Error::SizeGuard { what: "mb for symbolic Q", limit: SYMBOLIC_LIMIT });
    }
    if m == 0 || b == 0 || p.degree() != Some(n) {
        return Err(Error::DimensionMismatch { expected: n, found: p.degree().unwrap_or(0) });
    }
    let mut y: Vec<Vec<AnfPoly>> = Vec::with_capacity(m);
    let mut e = vec![AnfPoly::zero(); n];
    e[n - 1] = AnfPoly::one();
    y.push(e);
    for t in 1..m {
        y.push((1..=n).map(|s| AnfPoly::var(var_index(n, t, s))).collect());
    }
    let mut q = SymMatrix::zeros(n, n);
    for j in 0..b {
        for (t, row) in y.iter_mut().enumerate() {
            for (c, v) in row.iter().enumerate() {
                q.set(j * m + t, c, v.clone());
            }
            *row = companion_step_sym(row, p);
        }
    }
    Ok(SymbolicQ { m, b, p: p.clone(), q })
}

impl SymbolicQ {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn poly(&self) -> &Gf2Poly {
        &self.p
    }

    pub fn q(&self) -> &SymMatrix {
        &self.q
    }

    pub fn num_vars(&self) -> usize {
        (self.m - 1) * self.m * self.b
    }

    /// Row indices of `Q` in the permuted order: `e·P^j` for `j < b`, then
    /// `v_t·P^j` for each free row `t`.
    pub fn permuted_order(&self) -> Vec<usize> {
        let (m, b) = (self.m, self.b);
        let mut order: Vec<usize> = (0..b).map(|j| j * m).collect();
        for t in 1..m {
            order.extend((0..b).map(|j| j * m + t));
        }
        order
    }

    /// `Q_P`: the rows of `Q` grouped so that the constant rows come first.
    pub fn q_p(&self) -> SymMatrix {
        self.q.select_rows(&self.permuted_order())
    }

    /// The numeric `Y` for an assignment of the variables.
    pub fn specialize_y(&self, x: u128) -> BitMatrix {
        let n = self.m * self.b;
        let mut y = BitMatrix::zeros(self.m, n);
        y.set_row(0, &BitVector::unit_last(n));
        for t in 1..self.m {
            for s in 1..=n {
                y.set(t, s - 1, (x >> var_index(n, t, s)) & 1 == 1);
            }
        }
        y
    }
}

/// Determinants of `rows[0..popcount(mask)] x mask` for every column mask.
fn minor_table(q: &SymMatrix, rows: &[usize]) -> Vec<AnfPoly> {
    let n = q.cols();
    let k_max = rows.len();
    let mut d = vec![AnfPoly::zero(); 1 << n];
    d[0] = AnfPoly::one();
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        if k > k_max {
            continue;
        }
        let r = rows[k - 1];
        let mut acc = AnfPoly::zero();
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = q.get(r, c);
            let sub = &d[mask ^ (1 << c)];
            if !a.is_zero() && !sub.is_zero() {
                acc.add_assign(&a.mul(sub));
            }
        }
        d[mask] = acc;
    }
    d
}

/// Minors `μ(q[i][j])` for row `i` and every column `j`.
pub fn row_minors(q: &SymMatrix, i: usize) -> Vec<AnfPoly> {
    let n = q.rows();
    assert!(q.cols() == n && n <= 16, "row_minors needs a small square matrix");
    let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let d = minor_table(q, &rows);
    let full = (1usize << n) - 1;
    (0..n).map(|j| d[full ^ (1 << j)].clone()).collect()
}

/// All minors: entry `(i, j)` is `μ(q[i][j])`.
pub fn minors(q: &SymMatrix) -> SymMatrix {
    let n = q.rows();
    let mut out = SymMatrix::zeros(n, n);
    for i in 0..n {
        for (j, mu) in row_minors(q, i).into_iter().enumerate() {
            out.set(i, j, mu);
        }
    }
    out
}

pub fn determinant(q: &SymMatrix) -> AnfPoly {
    let n = q.rows();
    assert!(q.cols() == n && n <= 16);
    let rows: Vec<usize> = (0..n).collect();
    minor_table(q, &rows)[(1usize << n) - 1].clone()
}

/// The adjugate, `(j, i) ↦ μ(q[i][j])`. It equals the inverse wherever the
/// specialized matrix is invertible, since the determinant is then 1.
pub fn sym_adjugate_inverse(q: &SymMatrix) -> SymMatrix {
    minors(q).transpose()
}

/// `C = Q·P·adj(Q)`.
pub fn symbolic_config(sq: &SymbolicQ) -> Result<SymMatrix> {
    let n = sq.m * sq.b;
    if n > MINOR_LIMIT {
        return Err(Error::SizeGuard { what: "mb for symbolic C", limit: MINOR_LIMIT });
    }
    let qp = times_companion(&sq.q, &sq.p);
    qp.mul(&sym_adjugate_inverse(&sq.q))
}

fn times_companion(q: &SymMatrix, p: &Gf2Poly) -> SymMatrix {
    let n = q.rows();
    let mut out = SymMatrix::zeros(n, q.cols());
    for r in 0..n {
        for (c, v) in companion_step_sym(q.row(r), p).into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Degree(usize),
    EqualsDetQ3,
    Zero,
}

/// One checked minor of `Q_P`; `i` and `j` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: u8,
    pub i: usize,
    pub j: usize,
    pub expected: Expectation,
    pub computed_degree: Option<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub m: usize,
    pub b: usize,
    pub det_q3: AnfPoly,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn lemma_holds(&self, lemma: u8) -> bool {
        self.checks.iter().filter(|c| c.lemma == lemma).all(|c| c.holds)
    }

    pub fn count(&self, lemma: u8) -> usize {
        self.checks.iter().filter(|c| c.lemma == lemma).count()
    }

    pub fn violations(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Checks the four minor claims on `Q_P` (indices 1-based, `n = mb`):
///
/// 1. `deg μ(Q_P[b, j]) = n - b` for `j <= n - b`;
/// 2. for `i <= b`: `μ = det(Q_3)` when `i + j = n + 1` and `μ = 0` when `i + j > n + 1`;
/// 3. `deg μ = n - b - 1` for `i > b`, `j <= n - b`;
/// 4. `μ = 0` for `i > b`, `j > n - b`.
pub fn verify_minor_lemmas(m: usize, b: usize, p: &Gf2Poly) -> Result<LemmaReport> {
    let n = m * b;
    if n > MINOR_LIMIT {
        return Err(Error::SizeGuard { what: "mb for minor lemmas", limit: MINOR_LIMIT });
    }
    let sq = build_symbolic_q(m, b, p)?;
    let qp = sq.q_p();
    let mu = minors(&qp);
    let det_q3 = determinant(&qp.submatrix(b, 0, n - b, n - b));
    let mut checks = Vec::new();
    let mut push = |lemma: u8, i: usize, j: usize, expected: Expectation| {
        let v = mu.get(i - 1, j - 1);
        let holds = match &expected {
            Expectation::Degree(d) => v.degree() == Some(*d),
            Expectation::EqualsDetQ3 => *v == det_q3,
            Expectation::Zero => v.is_zero(),
        };
        checks.push(LemmaCheck { lemma, i, j, expected, computed_degree: v.degree(), holds });
    };
    for j in 1..=n - b {
        push(1, b, j, Expectation::Degree(n - b));
    }
    for i in 1..=b {
        for j in 1..=n {
            if i + j == n + 1 {
                push(2, i, j, Expectation::EqualsDetQ3);
            } else if i + j > n + 1 {
                push(2, i, j, Expectation::Zero);
            }
        }
    }
    for i in b + 1..=n {
        for j in 1..=n - b {
            push(3, i, j, Expectation::Degree(n - b - 1));
        }
        for j in n - b + 1..=n {
            push(4, i, j, Expectation::Zero);
        }
    }
    Ok(LemmaReport { m, b, det_q3, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    /// 1-based index `mb - m + 1` of the diagonal entry examined.
    pub index: usize,
    pub entry: AnfPoly,
    pub degree: Option<usize>,
    pub expected: usize,
    pub bound_holds: bool,
    /// With `m = 1` there are no variables and the bound says nothing.
    pub vacuous: bool,
}

/// Computes `C[mb-m+1, mb-m+1]` (1-based) and compares its degree with `mb - b`.
pub fn theorem1_check(m: usize, b: usize, p: &Gf2Poly) -> Result<Theorem1Report> {
    let n = m * b;
    if n > MINOR_LIMIT {
        return Err(Error::SizeGuard { what: "mb for the degree bound", limit: MINOR_LIMIT });
    }
    let sq = build_symbolic_q(m, b, p)?;
    let r = n - m;
    let qp_row = companion_step_sym(sq.q.row(r), p);
    // column r of adj(Q) is the minors of row r of Q
    let col = row_minors(&sq.q, r);
    let mut entry = AnfPoly::zero();
    for (a, mu) in qp_row.iter().zip(&col) {
        if !a.is_zero() && !mu.is_zero() {
            entry.add_assign(&a.mul(mu));
        }
    }
    let degree = entry.degree();
    let expected = n - b;
    Ok(Theorem1Report { index: r + 1, bound_holds: degree == Some(expected), degree, entry, expected, vacuous: m == 1 })
}

/// Prints a symbolic matrix one row per line.
pub fn render(m: &SymMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = m.row(r).iter().map(|p| p.to_text()).collect();
        s.push_str(&cells.join(" | "));
        s.push('\n');
    }
    s
}
