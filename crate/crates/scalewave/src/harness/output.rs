//! Output writers. CSV files start with two `#` comment lines carrying the
//! tool version and the resolved config as single-line JSON, followed by an
//! RFC-4180 table; readers should skip `#` lines (the `csv` crate's comment
//! support does).

use super::{HarnessError, RunConfig};
use crate::VERSION;
use std::fmt::Write as _;
use std::path::Path;

/// Serialize one CSV field, quoting only when RFC-4180 requires it.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render a full CSV document: version/config preamble, header, rows.
pub fn csv_document(config: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# scalewave {VERSION}");
    let config_json = serde_json::to_string(config).expect("config serializes");
    let _ = writeln!(out, "# config: {config_json}");
    let _ = writeln!(out, "{}", header.join(","));
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

/// Format an f64 for CSV/JSON text output (shortest round-trip form).
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}

pub fn write_file(
    dir: &Path,
    name: &str,
    contents: &str,
) -> Result<std::path::PathBuf, HarnessError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| HarnessError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| HarnessError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// JSON summaries share a common envelope with version and resolved config.
pub fn json_document<T: serde::Serialize>(
    config: &RunConfig,
    payload: &T,
) -> Result<String, HarnessError> {
    #[derive(serde::Serialize)]
    struct Envelope<'a, T> {
        version: &'static str,
        config: &'a RunConfig,
        #[serde(flatten)]
        payload: &'a T,
    }
    serde_json::to_string_pretty(&Envelope {
        version: VERSION,
        config,
        payload,
    })
    .map_err(|e| HarnessError::Io(format!("serialization failure: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting_is_minimal() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
