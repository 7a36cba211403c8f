//! Parsers for the textual argument formats: words as digit strings or
//! comma-separated letters, partitions and compositions as
//! comma-separated parts, tableaux as JSON files.

use std::path::Path;

use khecke_core::{Composition, IncreasingTableau, Partition, Word};

use crate::CliError;

pub fn word(s: &str) -> Result<Word, CliError> {
    s.parse()
        .map_err(|e| CliError::usage(format!("invalid word {s:?}: {e}")))
}

/// A partition written as comma-separated parts, e.g. `3,1`; the empty
/// string is the empty partition.
pub fn partition(s: &str) -> Result<Partition, CliError> {
    let parts = numbers(s).map_err(|e| CliError::usage(format!("invalid partition {s:?}: {e}")))?;
    Partition::new(parts).map_err(|e| CliError::usage(format!("invalid partition {s:?}: {e}")))
}

pub fn composition(s: &str) -> Result<Composition, CliError> {
    let parts =
        numbers(s).map_err(|e| CliError::usage(format!("invalid composition {s:?}: {e}")))?;
    Composition::new(parts).map_err(|e| CliError::usage(format!("invalid composition {s:?}: {e}")))
}

fn numbers(s: &str) -> Result<Vec<u32>, std::num::ParseIntError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|part| part.trim().parse()).collect()
}

/// Reads an increasing tableau from a JSON file; validation failures
/// surface the first violated invariant with its position.
pub fn tableau_file(path: &Path) -> Result<IncreasingTableau, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("invalid tableau in {}: {e}", path.display())))
}
