//! Run manifests: a plain `key = value` record of what a command did, enough
//! to rerun it and check the result.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Ordered key/value pairs. Keys are unique; values are single-line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunManifest {
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Set `key`, replacing an earlier value. Newlines in `value` become spaces.
    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string().replace(['\n', '\r'], " ");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn set_duration(&mut self, d: Duration) -> &mut Self {
        self.set("duration_seconds", format!("{:.3}", d.as_secs_f64()))
    }

    /// Record the sha256 of each input file under `<key>_sha256`.
    pub fn record_input(&mut self, key: &str, path: &Path) -> Result<&mut Self> {
        self.set(key, path.display());
        let digest = file_sha256(path)?;
        Ok(self.set(&format!("{key}_sha256"), digest))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = RunManifest::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(" = ")
                .or_else(|| line.split_once('='))
                .ok_or_else(|| Error::parse(no + 1, format!("expected `key = value`, got `{line}`")))?;
            m.set(k.trim(), v.trim());
        }
        Ok(m)
    }
}

/// Lowercase hex sha256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn file_sha256(path: &Path) -> Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}
