//! Attack-surface arithmetic and the guess-and-determine basis search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Gf2Poly, Result};

/// `log2` of the bias of a sum of `taps` independent approximations, each
/// with bias `2^eps_log2` (piling-up lemma).
pub fn pileup_bias(eps_log2: f64, taps: u32) -> f64 {
    (taps as f64 - 1.0) + taps as f64 * eps_log2
}

/// `log2` of the keystream length `1/ε²` needed to distinguish with bias `2^eps_final_log2`.
pub fn keystream_needed(eps_final_log2: f64) -> f64 {
    -2.0 * eps_final_log2
}

/// `Σ_{i=0}^{max_deg} C(vars, i)`: the number of monomials of degree at most
/// `max_deg` in `vars` variables.
pub fn linearization_size(vars: u64, max_deg: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut term = BigUint::one();
    for i in 0..=max_deg.min(vars) {
        if i > 0 {
            term = term * BigUint::from(vars - i + 1) / BigUint::from(i);
        }
        total += &term;
    }
    total
}

/// `log2` of a positive big integer.
pub fn log2_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return libm::log2(n.to_u64().unwrap_or(0) as f64);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    libm::log2(top as f64) + shift as f64
}

/// Rows of variable indices; each row is one relation that determines any
/// single unknown entry once the others are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTables {
    rows: Vec<Vec<usize>>,
    node_count: usize,
}

impl IndexTables {
    pub fn new(rows: Vec<Vec<usize>>, node_count: usize) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::BadTableEntry { degree: i, what: "empty row" });
            }
            if r.iter().any(|&n| n >= node_count) {
                return Err(Error::BadTableEntry { degree: i, what: "node index out of range" });
            }
        }
        Ok(IndexTables { rows, node_count })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    fn node_rows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count];
        for (r, row) in self.rows.iter().enumerate() {
            for &n in row {
                if !out[n].contains(&r) {
                    out[n].push(r);
                }
            }
        }
        out
    }
}

/// Index tables for SNOW 2.0: 35 LFSR words (0..=34) and 21 `R1` values
/// (35..=55), 19 rows in each of the three relation families.
pub fn build_snow2_tables() -> IndexTables {
    let mut rows = Vec::with_capacity(57);
    for t in 0..19 {
        rows.push(vec![t, t + 2, t + 11, t + 16]);
    }
    for t in 0..19 {
        rows.push(vec![t + 4, t + 35, t + 37]);
    }
    for t in 0..19 {
        rows.push(vec![t, t + 15, t + 36, t + 37]);
    }
    IndexTables { rows, node_count: 56 }
}

/// Number of rows per family in the KDFC-SNOW tables.
pub const KDFC_TABLE_ROWS: usize = 514;

/// Index tables built from the linear recurrence of `p` plus the two FSM
/// relation families; `rows` rows per family.
///
/// Sequence elements take nodes `0..deg+rows`, register values the
/// `rows + 2` nodes after that.
pub fn recurrence_row_tables(p: &Gf2Poly, rows: usize) -> Result<IndexTables> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let support = p.exponents();
    let base = deg + rows;
    let mut out = Vec::with_capacity(3 * rows);
    for t in 0..rows {
        out.push(support.iter().map(|&e| e + t).collect());
    }
    for t in 0..rows {
        out.push(vec![t + 4, base + t, base + t + 2]);
    }
    for t in 0..rows {
        out.push(vec![t, t + 15, base + t + 1, base + t + 2]);
    }
    IndexTables::new(out, base + rows + 2)
}

/// Known-set state with per-row unknown counts.
#[derive(Clone, Debug)]
struct Closure {
    known: Vec<bool>,
    unknown: Vec<usize>,
    known_count: usize,
}

impl Closure {
    fn empty(tables: &IndexTables) -> Self {
        Closure {
            known: vec![false; tables.node_count],
            unknown: tables.rows.iter().map(|r| distinct(r)).collect(),
            known_count: 0,
        }
    }

    fn learn(&mut self, tables: &IndexTables, node_rows: &[Vec<usize>], node: usize) {
        let mut work = vec![node];
        while let Some(n) = work.pop() {
            if self.known[n] {
                continue;
            }
            self.known[n] = true;
            self.known_count += 1;
            for &r in &node_rows[n] {
                self.unknown[r] -= 1;
                if self.unknown[r] == 1 {
                    if let Some(&last) = tables.rows[r].iter().find(|&&x| !self.known[x]) {
                        work.push(last);
                    }
                }
            }
        }
    }

    /// `hist[k]` is the number of rows with exactly `k` unknown entries.
    fn histogram(&self, width: usize) -> Vec<usize> {
        let mut h = vec![0; width + 1];
        for &u in &self.unknown {
            h[u] += 1;
        }
        h
    }
}

fn distinct(row: &[usize]) -> usize {
    let mut v = row.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Least fixed point of "a row with one unknown entry determines it".
pub fn gd_closure(tables: &IndexTables, known: &[usize]) -> Vec<usize> {
    let node_rows = tables.node_rows();
    let mut c = Closure::empty(tables);
    for &n in known {
        if n < tables.node_count {
            c.learn(tables, &node_rows, n);
        }
    }
    (0..tables.node_count).filter(|&n| c.known[n]).collect()
}

/// A guessed basis, in the order its nodes were chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdPath {
    pub nodes: Vec<usize>,
}

impl GdPath {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `log2` of the guessing work for `word_bits`-bit variables.
    pub fn complexity_log2(&self, word_bits: usize) -> usize {
        word_bits * self.nodes.len()
    }
}

struct Candidate {
    path: Vec<usize>,
    closure: Closure,
}

/// Compares by eliminated count, then by the number of rows with 2 unknowns,
/// 3 unknowns, and so on. `Greater` is better.
fn compare(a: &Closure, b: &Closure, width: usize) -> core::cmp::Ordering {
    a.known_count.cmp(&b.known_count).then_with(|| {
        let (ha, hb) = (a.histogram(width), b.histogram(width));
        ha[2..].cmp(&hb[2..])
    })
}

fn extend(
    tables: &IndexTables,
    node_rows: &[Vec<usize>],
    stage: &[Option<Candidate>],
    width: usize,
) -> Vec<Option<Candidate>> {
    (0..tables.node_count)
        .map(|k| {
            let mut best: Option<Candidate> = None;
            for prev in stage.iter().flatten() {
                if prev.closure.known[k] {
                    continue;
                }
                let mut c = prev.closure.clone();
                c.learn(tables, node_rows, k);
                let better = best
                    .as_ref()
                    .map_or(true, |b| compare(&c, &b.closure, width) == core::cmp::Ordering::Greater);
                if better {
                    let mut path = prev.path.clone();
                    path.push(k);
                    best = Some(Candidate { path, closure: c });
                }
            }
            best
        })
        .collect()
}

/// Stage-by-stage best-path search over the trellis of nodes.
///
/// At stage `i` each node keeps the best path of length `i` ending in it,
/// built by extending the stage `i-1` paths of the other nodes. Ties that
/// survive the row histogram go to the lowest predecessor index. The search
/// stops at the first stage where some path determines every node; among
/// those the lowest end node wins.
pub fn gd_search(tables: &IndexTables, max_stages: usize) -> Result<GdPath> {
    let n = tables.node_count;
    let node_rows = tables.node_rows();
    let width = tables.rows.iter().map(|r| distinct(r)).max().unwrap_or(0);
    let base = Closure::empty(tables);
    let mut stage: Vec<Option<Candidate>> = (0..n)
        .map(|k| {
            let mut c = base.clone();
            c.learn(tables, &node_rows, k);
            Some(Candidate { path: vec![k], closure: c })
        })
        .collect();
    for len in 1..=max_stages {
        if len > 1 {
            stage = extend(tables, &node_rows, &stage, width);
        }
        if let Some(done) = stage.iter().flatten().find(|c| c.closure.known_count == n) {
            return Ok(GdPath { nodes: done.path.clone() });
        }
    }
    Err(Error::NoCover { stages: max_stages })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bias_arithmetic() {
        assert!((pileup_bias(-15.496, 250) - -3625.0).abs() < 0.1);
        assert!((keystream_needed(-3625.0) - 7250.0).abs() < 1e-9);
        assert_eq!(pileup_bias(-3.0, 1), -3.0);
    }

    #[test]
    fn small_sums() {
        assert_eq!(linearization_size(10, 0), BigUint::one());
        assert_eq!(linearization_size(4, 4), BigUint::from(16u32));
        assert_eq!(linearization_size(544, 2), BigUint::from(148_241u32));
    }

    #[test]
    fn closure_chain() {
        let t = IndexTables::new(vec![vec![0, 1], vec![1, 2]], 3).unwrap();
        assert_eq!(gd_closure(&t, &[0]), vec![0, 1, 2]);
        assert!(gd_closure(&build_snow2_tables(), &[]).is_empty());
    }

    #[test]
    fn toy_search() {
        let t = IndexTables::new(vec![vec![0, 1, 2]], 3).unwrap();
        assert_eq!(gd_search(&t, 5).unwrap().len(), 2);
    }
}
