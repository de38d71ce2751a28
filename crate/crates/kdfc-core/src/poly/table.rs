use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use super::{is_irreducible, is_primitive, Gf2Poly};
use crate::{Error, Result};

pub const TABLE_HEADER_PREFIX: &str = "# kdfc primitive polynomial table v1 sha256=";

const BUILTIN: &str = include_str!("../../data/primitive_polys.txt");

pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 512;

/// One primitive polynomial per degree in `2..=512`.
///
/// Which polynomial is picked for a degree is a convention of the data file:
/// the shipped table uses the first primitive trinomial, else the first
/// primitive pentanomial, and the SNOW 2.0 LFSR polynomial at degree 512.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveTable {
    entries: BTreeMap<usize, Gf2Poly>,
    checksum: String,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl PrimitiveTable {
    /// The table compiled into the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin table is well formed")
    }

    /// Parses the text format: a checksum header followed by `d: e1,e2,...` lines.
    ///
    /// Structure and checksum are validated here. Irreducibility is checked
    /// separately by [`PrimitiveTable::verify`] since it costs a few seconds.
    pub fn parse(text: &str) -> Result<Self> {
        let (header, body) = text.split_once('\n').unwrap_or((text, ""));
        let expected = header
            .trim_end()
            .strip_prefix(TABLE_HEADER_PREFIX)
            .ok_or_else(|| Error::Parse { line: 1, msg: "missing table header".to_string() })?
            .to_string();
        let actual = hex(&Sha256::digest(body.as_bytes()));
        if expected != actual {
            return Err(Error::Checksum { expected, actual });
        }
        let mut entries = BTreeMap::new();
        for (i, raw) in body.lines().enumerate() {
            let line = i + 2;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line, msg };
            let (d, exps) = l.split_once(':').ok_or_else(|| err("expected `degree: exponents`".to_string()))?;
            let d: usize = d.trim().parse().map_err(|_| err(format!("bad degree {d:?}")))?;
            let exps: Vec<usize> = exps
                .split(',')
                .map(|e| e.trim().parse::<usize>().map_err(|_| err(format!("bad exponent {e:?}"))))
                .collect::<Result<_>>()?;
            if exps.windows(2).any(|w| w[0] <= w[1]) {
                return Err(err("exponents must be strictly descending".to_string()));
            }
            if exps.first() != Some(&d) || exps.last() != Some(&0) {
                return Err(err(format!("entry does not have degree {d} and a constant term")));
            }
            if !(MIN_DEGREE..=MAX_DEGREE).contains(&d) {
                return Err(err(format!("degree {d} outside {MIN_DEGREE}..={MAX_DEGREE}")));
            }
            if entries.insert(d, Gf2Poly::from_exponents(&exps)).is_some() {
                return Err(err(format!("duplicate degree {d}")));
            }
        }
        for d in MIN_DEGREE..=MAX_DEGREE {
            if !entries.contains_key(&d) {
                return Err(Error::Parse { line: 0, msg: format!("missing degree {d}") });
            }
        }
        Ok(PrimitiveTable { entries, checksum: expected })
    }

    /// Checks every entry for irreducibility and, up to degree 64, primitivity.
    pub fn verify(&self) -> Result<()> {
        for (&d, p) in &self.entries {
            if !is_irreducible(p) {
                return Err(Error::BadTableEntry { degree: d, what: "irreducible" });
            }
            if d <= 64 && !is_primitive(p)? {
                return Err(Error::BadTableEntry { degree: d, what: "primitive" });
            }
        }
        Ok(())
    }

    /// The body checksum, which doubles as the table version.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn get(&self, degree: usize) -> Result<&Gf2Poly> {
        self.entries
            .get(&degree)
            .ok_or(Error::DegreeOutOfRange { degree, min: MIN_DEGREE, max: MAX_DEGREE })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Gf2Poly)> {
        self.entries.iter().map(|(&d, p)| (d, p))
    }

    /// Serializes back to the text format, recomputing the checksum.
    pub fn to_text(&self) -> String {
        let mut body = String::new();
        for (d, p) in &self.entries {
            let exps: Vec<String> = p.exponents().iter().map(|e| e.to_string()).collect();
            body.push_str(&format!("{d}: {}\n", exps.join(",")));
        }
        let digest = hex(&Sha256::digest(body.as_bytes()));
        format!("{TABLE_HEADER_PREFIX}{digest}\n{body}")
    }
}

/// The builtin table entry for `degree`.
pub fn primitive_poly(degree: usize) -> Result<Gf2Poly> {
    PrimitiveTable::builtin().get(degree).cloned()
}
