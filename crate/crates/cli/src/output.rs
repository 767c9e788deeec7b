use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::CliError;

/// What a subcommand produced: the table (CSV, or a diagram for `gen` and
/// `contract`), a short human summary, and metadata for the sidecar.
pub struct Report {
    pub body: String,
    pub summary: String,
    pub meta: Value,
}

/// `report.csv` -> `report.meta.json`
pub fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{}.meta.json", stem))
}

/// With `--out`, the body and sidecar go to files and the summary to stdout;
/// otherwise the summary is followed by the body on stdout.
pub fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match out {
        Some(path) => {
            fs::write(path, &report.body).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
            let side = sidecar_path(path);
            let mut meta = serde_json::to_string_pretty(&report.meta).expect("metadata serializes");
            meta.push('\n');
            fs::write(&side, meta).map_err(|e| CliError::Input(format!("{}: {}", side.display(), e)))?;
            write!(lock, "{}", report.summary)?;
            writeln!(lock, "wrote {} and {}", path.display(), side.display())?;
        }
        None => {
            if !report.summary.is_empty() {
                write!(lock, "{}", report.summary)?;
                writeln!(lock)?;
            }
            write!(lock, "{}", report.body)?;
        }
    }
    Ok(())
}
