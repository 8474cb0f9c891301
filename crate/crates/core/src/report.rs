//! Machine-readable check reports.
//!
//! One [`CheckResult`] per executed check, serialized as a JSON array
//! or an RFC-4180 CSV table with a header row. Both encodings carry
//! exactly the fields suite, check, params, status, residual,
//! elapsed_ms, seed, and both round-trip losslessly, so a report can
//! be diffed, re-parsed, and compared across runs. Only `elapsed_ms`
//! is environment-dependent; every other byte of a report is a pure
//! function of the configuration and seed that produced it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Verdict of one check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// The identity held: literal equality for exact checks, residual
    /// within tolerance for floating-point checks.
    Pass,
    /// The identity failed or the check errored; `params` carries a
    /// reproduction command line.
    Fail,
    /// The check does not run under the requested arithmetic mode.
    Skip,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skip => write!(f, "SKIP"),
        }
    }
}

/// Outcome of a single named check at a single configuration.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    /// Suite the check is registered under.
    pub suite: String,
    /// Stable check identifier.
    pub check: String,
    /// Parameter snapshot; on FAIL it also carries the exact command
    /// line that reproduces the run.
    pub params: String,
    pub status: Status,
    /// Worst residual observed across the check's trials. Exact checks
    /// report 0.0 on literal equality; errored checks report f64::MAX
    /// (infinities are avoided so that every report stays JSON-legal).
    pub residual: f64,
    /// Wall-clock time; excluded from determinism comparisons.
    pub elapsed_ms: u64,
    /// The per-check seed actually used.
    pub seed: u64,
}

/// Serializes results as a newline-terminated JSON array.
pub fn to_json(results: &[CheckResult]) -> Result<String> {
    let mut text = serde_json::to_string_pretty(results)
        .map_err(|e| Error::Argument(format!("JSON encoding failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Parses a JSON report back into results.
pub fn from_json(text: &str) -> Result<Vec<CheckResult>> {
    serde_json::from_str(text).map_err(|e| Error::Argument(format!("JSON parse failed: {e}")))
}

/// Serializes results as CSV with a header row and RFC-4180 quoting.
pub fn to_csv(results: &[CheckResult]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in results {
        writer
            .serialize(r)
            .map_err(|e| Error::Argument(format!("CSV encoding failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Argument(format!("CSV flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Argument(format!("CSV is not UTF-8: {e}")))
}

/// Parses a CSV report back into results.
pub fn from_csv(text: &str) -> Result<Vec<CheckResult>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|row| row.map_err(|e| Error::Argument(format!("CSV parse failed: {e}"))))
        .collect()
}

/// Report encodings the binary can emit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportFormat::Json => write!(f, "json"),
            ReportFormat::Csv => write!(f, "csv"),
        }
    }
}

/// Renders results in the chosen format.
pub fn render(results: &[CheckResult], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(results),
        ReportFormat::Csv => to_csv(results),
    }
}

/// Writes a rendered report to disk. Refuses an empty result list:
/// no suite is empty, so an empty report always indicates a bug in the
/// caller.
pub fn write_report(results: &[CheckResult], format: ReportFormat, path: &Path) -> Result<()> {
    if results.is_empty() {
        return Err(Error::Argument("no results to report".into()));
    }
    let text = render(results, format)?;
    std::fs::write(path, text)?;
    Ok(())
}
