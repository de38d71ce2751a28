//! The published `Y` for the full-scale profile (32-bit words, 16 blocks,
//! 468 offline iterations) and the procedure that produced it.

use anyhow::{ensure, Result};
use kdfc_core::confgen::{y_offline, FillBits};
use kdfc_core::kdfc::DEFAULT_OFFLINE_ITERATIONS;
use kdfc_core::poly::PrimitiveTable;
use kdfc_core::BitMatrix;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::formats::{MatrixJson, Provenance, YInitJson};

/// Seed recorded for the shipped file.
pub const BUILTIN_SEED: u64 = 0x4b44_4643_0001;

const BUILTIN: &str = include_str!("../data/y_init_k468.json");

/// `count` fill words of `m - 1` bits from ChaCha20 seeded with `seed`.
pub fn seeded_fill(seed: u64, m: usize, count: usize) -> FillBits {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mask = if m >= 65 { u64::MAX } else { (1u64 << (m - 1)) - 1 };
    FillBits::new((0..count).map(|_| rng.next_u64() & mask).collect())
}

/// Runs `k` offline iterations from the identity with seeded fill bits.
pub fn generate(seed: u64, m: usize, b: usize, k: usize, table: &PrimitiveTable) -> Result<YInitJson> {
    ensure!((1..=64).contains(&m), "word width must be in 1..=64");
    let fill = seeded_fill(seed, m, k);
    let y = y_offline(b, k, &fill, &BitMatrix::identity(m), table)?;
    Ok(YInitJson {
        provenance: Provenance { seed, table_sha256: table.checksum().to_string(), k, m, b, init: "identity".into() },
        matrix: MatrixJson::from_matrix(&y.to_matrix()),
    })
}

/// The shipped file, parsed.
pub fn builtin() -> YInitJson {
    let y: YInitJson = serde_json::from_str(BUILTIN).expect("shipped y_init parses");
    debug_assert_eq!(y.provenance.k, DEFAULT_OFFLINE_ITERATIONS);
    y
}
