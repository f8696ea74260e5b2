//! Report envelopes and output plumbing.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

pub const TOOL: &str = "annulus";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every JSON report: provenance fields followed by the payload.
#[derive(Debug, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub mode: String,
    /// What `result` measures, and how.
    pub quantity: &'a str,
    pub result: T,
}

impl<'a, T: Serialize> Report<'a, T> {
    pub fn new(command: &'a str, seed: u64, mode: String, quantity: &'a str, result: T) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command,
            seed,
            mode,
            quantity,
            result,
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        to_json(self)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Failure(format!("cannot serialise report: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// CSV with a leading `#` provenance line and a fixed header.
pub fn to_csv(
    command: &str,
    seed: u64,
    quantity: &str,
    header: &[&str],
    rows: &[Vec<f64>],
) -> String {
    let mut out = format!(
        "# {TOOL} {VERSION} command={command} seed={seed} mode=float quantity={quantity}\n"
    );
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Usage(
                    format!("cannot write to standard output: {e}"),
                )),
                _ => Ok(()),
            }
        }
    }
}
