//! Document formats, subcommands and seeded audit suites for the
//! `polymeasure` binary.

pub mod commands;
pub mod docs;
pub mod error;
pub mod suites;
pub mod svg;

use std::path::Path;

pub use docs::{ConfigDocument, MeasureDocument, ResultDocument};
pub use error::{CliError, CliResult};

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}
