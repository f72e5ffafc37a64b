//! Where results go, the run manifest, and the exit-code contract.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use h2wave_core::io::SCHEMA;
use h2wave_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Usage,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        ExitCode::from(match s {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Usage => 2,
        })
    }
}

pub fn status_of(passed: bool) -> Status {
    if passed {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// A failure that ends the run before any result is produced.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub status: Status,
}

impl Failure {
    pub fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            kind,
            message: message.into(),
            status: Status::Usage,
        }
    }

    pub fn report(&self) {
        let body = json!({ "error": self.kind, "message": self.message });
        eprintln!("{body}");
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::ParameterRange(_) => "parameter_range",
            Error::NonPositiveSupport(_) => "non_positive_support",
            Error::EvenQ(_) => "even_q",
            Error::OverlappingPieces(_) => "overlapping_pieces",
            Error::NotAWaveletSet(_) => "not_a_wavelet_set",
            Error::NotAWavelet(_) => "not_a_wavelet",
            Error::Unclassifiable => "unclassifiable",
            Error::Parse(_) => "parse",
        };
        Failure::usage(kind, e.to_string())
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub artifact_version: String,
    pub outputs: Vec<PathBuf>,
}

pub fn artifact_version() -> String {
    format!("{SCHEMA} h2wave {}", env!("CARGO_PKG_VERSION"))
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Writes `body` to stdout, or to `out` together with its manifest.
pub fn emit(body: &str, out: Option<&Path>, command: &str, params: Value) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| Failure::usage("io", e.to_string());
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(io_err)?;
        }
        Some(path) => {
            fs::write(path, body).map_err(io_err)?;
            let manifest = RunManifest {
                command: command.to_string(),
                params,
                artifact_version: artifact_version(),
                outputs: vec![path.to_path_buf()],
            };
            let v = serde_json::to_value(&manifest).expect("manifest serializes");
            fs::write(manifest_path(path), to_json(&v)).map_err(io_err)?;
        }
    }
    Ok(())
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

/// Rows as RFC-4180 CSV. The header is written even when there are no rows.
pub fn to_csv(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, Failure> {
    let csv_err = |e: csv::Error| Failure::usage("csv", e.to_string());
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::usage("csv", e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
