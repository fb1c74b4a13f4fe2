use std::fs;
use std::io::{self, Write};

use fuss_deform::Error;
use thiserror::Error;

use crate::{Format, GlobalOpts};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("{0}")]
    Contradiction(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Contradiction(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => CliError::Contradiction(e.to_string()),
            Error::Bracketing(_) | Error::NonConvergence { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Writes `csv` or `json` depending on the selected format.
pub fn emit(
    g: &GlobalOpts,
    csv: impl FnOnce() -> String,
    json: impl FnOnce() -> String,
) -> Result<(), CliError> {
    let mut text = match g.format {
        Format::Csv => csv(),
        Format::Json => json(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn csv_table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Shortest round-trip text for a float, switching to exponent form for
/// very small or large magnitudes.
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("float serializes")
}
