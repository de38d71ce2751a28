//! Word-oriented σ-LFSRs with key-dependent feedback configurations.
//!
//! The crate is `no_std` and only needs an allocator. It contains:
//!
//! - [`linalg`]: bit-packed vectors and matrices over GF(2), characteristic
//!   polynomials and Berlekamp–Massey.
//! - [`poly`]: GF(2)\[x\] arithmetic, irreducibility and primitivity tests and
//!   the shipped table of primitive polynomials.
//! - [`lfsr`]: the generic σ-LFSR engine.
//! - [`confgen`]: generation of a feedback configuration with a prescribed
//!   primitive characteristic polynomial from a stream of fill bits.
//! - [`snow2`] and [`kdfc`]: SNOW 2.0 and the KDFC-SNOW variant whose
//!   gains are derived from the key.
//! - [`symbolic`], [`attacks`], [`randtests`]: the analysis tooling.
#![no_std]

extern crate alloc;

pub mod attacks;
pub mod confgen;
mod error;
pub mod kdfc;
pub mod lfsr;
pub mod linalg;
pub mod poly;
pub mod randtests;
pub mod snow2;
pub mod symbolic;

pub use error::{Error, Result};
pub use lfsr::{LfsrState, SigmaConfig};
pub use linalg::{BitMatrix, BitVector};
pub use poly::Gf2Poly;
