//! Append-only line-delimited certificate store.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use torsion_forge_core::forge::{AnyCertificate, CertificateJson};

use crate::CliError;

pub const STATUS_VALID: &str = "valid";
pub const STATUS_INVALID: &str = "invalid";

/// One store line: the certificate's fields plus provenance metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreEntry {
    #[serde(flatten)]
    pub certificate: CertificateJson,
    pub created_at: String,
    pub family: String,
    pub verification_status: String,
}

impl StoreEntry {
    pub fn new(certificate: CertificateJson, family: &str, valid: bool, created_at: &str) -> Self {
        Self {
            certificate,
            created_at: created_at.to_string(),
            family: family.to_string(),
            verification_status: status(valid).to_string(),
        }
    }

    /// Re-verifies the certificate; `true` when the verdict matches the
    /// stored status.
    pub fn status_matches(&self) -> Result<bool, CliError> {
        let cert = AnyCertificate::from_json(&self.certificate).map_err(CliError::precondition)?;
        Ok(status(cert.verify().valid()) == self.verification_status)
    }
}

pub fn status(valid: bool) -> &'static str {
    if valid {
        STATUS_VALID
    } else {
        STATUS_INVALID
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveStore {
    path: PathBuf,
}

impl CurveStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: std::io::Error) -> CliError {
        CliError::Io {
            path: self.path.display().to_string(),
            source,
        }
    }

    pub fn append(&self, entries: &[StoreEntry]) -> Result<(), CliError> {
        let mut text = String::new();
        for entry in entries {
            text.push_str(&serde_json::to_string(entry).expect("store entries serialize"));
            text.push('\n');
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        file.write_all(text.as_bytes()).map_err(|e| self.io(e))
    }

    pub fn read(&self) -> Result<Vec<StoreEntry>, CliError> {
        let text = fs::read_to_string(&self.path).map_err(|e| self.io(e))?;
        parse_lines(&text)
    }
}

pub fn parse_lines(text: &str) -> Result<Vec<StoreEntry>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line)
                .map_err(|e| CliError::Precondition(format!("store line {}: {e}", i + 1)))
        })
        .collect()
}

/// `--created-at` if given, else `SOURCE_DATE_EPOCH` (seconds), else now.
pub fn created_at(flag: Option<&str>) -> Result<String, CliError> {
    if let Some(text) = flag {
        return Ok(text.to_string());
    }
    let time = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(secs) => {
            let secs: i64 = secs
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("SOURCE_DATE_EPOCH={secs:?} is not an integer")))?;
            DateTime::<Utc>::from_timestamp(secs, 0)
                .ok_or_else(|| CliError::Usage(format!("SOURCE_DATE_EPOCH={secs} out of range")))?
        }
        Err(_) => Utc::now(),
    };
    Ok(time.to_rfc3339_opts(SecondsFormat::Secs, true))
}
