//! Report emission: CSV lines or JSON, to stdout or a file.

use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn parse_format(name: &str) -> CliResult<Format> {
    match name {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(CliError::Config(format!(
            "unknown format `{other}` (csv | json)"
        ))),
    }
}

pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Render rows either as CSV with the given header or as a JSON array.
pub fn render_rows<T: Serialize>(
    format: Format,
    header: &str,
    rows: &[T],
    csv_line: impl Fn(&T) -> String,
) -> String {
    match format {
        Format::Csv => {
            let mut text = String::from(header);
            text.push('\n');
            for row in rows {
                text.push_str(&csv_line(row));
                text.push('\n');
            }
            text
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(rows).expect("serializable rows");
            text.push('\n');
            text
        }
    }
}
