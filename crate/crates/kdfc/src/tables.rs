//! Loading the primitive polynomial table.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use kdfc_core::poly::PrimitiveTable;

/// Environment variable naming a table file to use instead of the builtin one.
pub const TABLE_ENV: &str = "KDFC_POLY_TABLE";

/// Reads and fully verifies a table file.
pub fn load_file(path: &Path) -> Result<PrimitiveTable> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let table = PrimitiveTable::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    table.verify().with_context(|| format!("verifying {}", path.display()))?;
    Ok(table)
}

/// An explicit path wins, then `KDFC_POLY_TABLE`, then the builtin table.
pub fn load(path: Option<&Path>) -> Result<PrimitiveTable> {
    let from_env = std::env::var_os(TABLE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(from_env) {
        Some(p) => load_file(&p),
        None => Ok(PrimitiveTable::builtin()),
    }
}
