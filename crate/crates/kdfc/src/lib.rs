//! File formats, table loading and the command-line front end for
//! [`kdfc_core`].
//!
//! - [`formats`]: JSON shapes for matrices, configurations, known-answer
//!   vectors, the published `Y` and analysis reports, plus hex word IO.
//! - [`tables`]: the primitive polynomial table, with a path override.
//! - [`yinit`]: the shipped full-scale `Y` and how it was produced.
//! - [`cli`]: argument parsing and command dispatch.

pub mod cli;
pub mod formats;
pub mod tables;
pub mod yinit;

pub use kdfc_core;
