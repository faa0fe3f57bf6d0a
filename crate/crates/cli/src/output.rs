//! Report rendering and atomic writes.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, OutputConfig};
use crate::CliError;

pub struct Report {
    pub json: Value,
    pub markdown: String,
    pub csv: String,
    /// A declared expectation was violated.
    pub failed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| CliError::Output(e.to_string()))?;
                s.push('\n');
                s
            }
            Format::Md => self.markdown.clone(),
            Format::Csv => self.csv.clone(),
        })
    }
}

pub fn csv_of<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// Stdout, or a temp file in the target directory renamed into place.
pub fn emit(report: &Report, out: &OutputConfig) -> Result<(), CliError> {
    let text = report.render(out.format)?;
    let Some(path) = &out.path else {
        print!("{text}");
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let err = |e: std::io::Error| CliError::Output(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(err)?;
    tmp.write_all(text.as_bytes()).map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}
