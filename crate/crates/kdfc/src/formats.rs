//! JSON and text formats.
//!
//! Matrices are `{"rows", "cols", "hex-rows"}` where each row is hex with the
//! least significant nibble first (bit 0 of the row is the low bit of the
//! first character). Polynomials are descending exponent lists. Keystream
//! words are lowercase hex, one per line, most significant bit first.

use std::fmt::Write as _;

use anyhow::{bail, ensure, Context, Result};
use kdfc_core::confgen::YMatrix;
use kdfc_core::randtests::TestResult;
use kdfc_core::{BitMatrix, BitVector, Gf2Poly, SigmaConfig};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "hex-rows")]
    pub hex_rows: Vec<String>,
}

impl MatrixJson {
    pub fn from_matrix(m: &BitMatrix) -> Self {
        MatrixJson { rows: m.rows(), cols: m.cols(), hex_rows: m.to_hex_rows() }
    }

    pub fn to_matrix(&self) -> Result<BitMatrix> {
        ensure!(self.hex_rows.len() == self.rows, "expected {} hex rows, found {}", self.rows, self.hex_rows.len());
        Ok(BitMatrix::from_hex_rows(self.rows, self.cols, &self.hex_rows)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub m: usize,
    pub b: usize,
    pub gains: Vec<MatrixJson>,
}

impl ConfigJson {
    pub fn from_config(cfg: &SigmaConfig) -> Self {
        ConfigJson { m: cfg.m(), b: cfg.b(), gains: cfg.gains().iter().map(MatrixJson::from_matrix).collect() }
    }

    pub fn to_config(&self) -> Result<SigmaConfig> {
        let gains = self.gains.iter().map(MatrixJson::to_matrix).collect::<Result<Vec<_>>>()?;
        Ok(SigmaConfig::new(self.m, self.b, gains)?)
    }
}

pub fn poly_to_json(p: &Gf2Poly) -> Vec<usize> {
    p.exponents()
}

pub fn poly_from_json(exps: &[usize]) -> Result<Gf2Poly> {
    ensure!(exps.windows(2).all(|w| w[0] > w[1]), "exponents must be strictly descending");
    Ok(Gf2Poly::from_exponents(exps))
}

/// Known-answer vector: key, IV and the first keystream words, all as
/// 8-digit hex words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KatJson {
    pub key: Vec<String>,
    pub iv: Vec<String>,
    pub first_n_words: Vec<String>,
}

impl KatJson {
    pub fn new(key: &[u32], iv: &[u32], words: &[u32]) -> Self {
        let hex = |ws: &[u32]| ws.iter().map(|w| format!("{w:08x}")).collect();
        KatJson { key: hex(key), iv: hex(iv), first_n_words: hex(words) }
    }

    pub fn key_words(&self) -> Result<Vec<u32>> {
        self.key.iter().map(|w| parse_word(w)).collect()
    }

    pub fn iv_words(&self) -> Result<Vec<u32>> {
        self.iv.iter().map(|w| parse_word(w)).collect()
    }

    pub fn words(&self) -> Result<Vec<u32>> {
        self.first_n_words.iter().map(|w| parse_word(w)).collect()
    }
}

/// Where a published `Y` came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Seed of the ChaCha20 stream that supplied the offline fill bits.
    pub seed: u64,
    /// Checksum of the primitive polynomial table used for the iterations.
    pub table_sha256: String,
    /// Offline iterations applied.
    pub k: usize,
    pub m: usize,
    pub b: usize,
    /// Starting matrix; always `identity` for files written by this crate.
    pub init: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YInitJson {
    pub provenance: Provenance,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

impl YInitJson {
    pub fn y(&self) -> Result<YMatrix> {
        let y = YMatrix::from_matrix(&self.matrix.to_matrix()?)?;
        ensure!(
            y.iterations() == self.provenance.k && y.m() == self.provenance.m,
            "matrix shape {}x{} does not match k = {}",
            y.m(),
            y.width(),
            self.provenance.k
        );
        Ok(y)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestResultJson {
    pub name: String,
    pub p_value: f64,
    pub statistic: f64,
    pub pass: bool,
}

impl From<&TestResult> for TestResultJson {
    fn from(r: &TestResult) -> Self {
        TestResultJson { name: r.name.to_string(), p_value: r.p_value, statistic: r.statistic, pass: r.pass }
    }
}

/// Text layout of a randomness report: name, P-value and a pass mark.
pub fn battery_text(results: &[TestResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<28} {:>10}  result", "test", "p-value");
    for r in results {
        let _ = writeln!(out, "{:<28} {:>10.6}  {}", r.name, r.p_value, if r.pass { "pass" } else { "FAIL" });
    }
    out
}

pub fn parse_word(s: &str) -> Result<u32> {
    let t = s.trim().trim_start_matches("0x");
    ensure!(!t.is_empty() && t.len() <= 8, "bad hex word {s:?}");
    u32::from_str_radix(t, 16).with_context(|| format!("bad hex word {s:?}"))
}

/// A key or IV: either hex (8 digits per big-endian word, no separators) or
/// a comma-separated list of decimal words.
pub fn parse_words(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.contains(',') {
        return s
            .split(',')
            .map(|w| w.trim().parse::<u32>().with_context(|| format!("bad decimal word {w:?}")))
            .collect();
    }
    let t = s.trim_start_matches("0x");
    if t.len() % 8 != 0 || t.is_empty() {
        bail!("hex key/IV must be a multiple of 8 digits, got {}", t.len());
    }
    (0..t.len() / 8).map(|i| parse_word(&t[8 * i..8 * i + 8])).collect()
}

pub fn words_to_hex_lines(words: &[u32]) -> String {
    let mut out = String::with_capacity(words.len() * 9);
    for w in words {
        let _ = writeln!(out, "{w:08x}");
    }
    out
}

/// Reads hex words, one per line; blank lines and `#` comments are skipped.
pub fn parse_hex_lines(text: &str) -> Result<Vec<u32>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_word(l).with_context(|| format!("line {}", i + 1)))
        .collect()
}

/// Bits of 32-bit words, most significant bit of each word first.
pub fn words_to_bits(words: &[u32]) -> BitVector {
    BitVector::from_bits(words.iter().flat_map(|&w| (0..32).rev().map(move |i| (w >> i) & 1 == 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_lists() {
        assert_eq!(parse_words("80000000000000000000000000000000").unwrap(), [0x8000_0000, 0, 0, 0]);
        assert_eq!(parse_words("681, 884,35,345").unwrap(), [681, 884, 35, 345]);
        assert!(parse_words("123").is_err());
        assert!(parse_words("zz000000").is_err());
    }

    #[test]
    fn bit_order() {
        let v = words_to_bits(&[0x8000_0001]);
        assert!(v.get(0) && v.get(31));
        assert_eq!(v.count_ones(), 2);
    }

    #[test]
    fn hex_lines() {
        let words = [0xdead_beef, 0, 0x10];
        let text = words_to_hex_lines(&words);
        assert_eq!(text, "deadbeef\n00000000\n00000010\n");
        assert_eq!(parse_hex_lines(&format!("# comment\n{text}\n")).unwrap(), words);
    }
}
