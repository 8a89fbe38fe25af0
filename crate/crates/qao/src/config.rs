//! Flat `key = value` configuration files.
//!
//! Grammar: one `key = value` pair per line, `#` starts a comment, blank
//! lines ignored. Recognized keys: omega, eps1, eps2, c, nu, cutoff.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{HardParams, SoftParams};

#[derive(Debug, Clone, Default)]
pub struct Config {
    values: HashMap<String, f64>,
}

const KNOWN_KEYS: [&str; 6] = ["omega", "eps1", "eps2", "c", "nu", "cutoff"];

impl Config {
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut values = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: line_no,
                message: format!("expected key = value, got \"{line}\""),
            })?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key \"{key}\""),
                });
            }
            let parsed: f64 = value.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("key \"{key}\": invalid number \"{}\"", value.trim()),
            })?;
            if values.insert(key.to_string(), parsed).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key \"{key}\""),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse_str(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }

    fn require(&self, key: &str) -> Result<f64> {
        self.get(key).ok_or_else(|| Error::MissingKey {
            key: key.to_string(),
        })
    }

    /// Hard-oscillator parameters; omega, eps1, eps2 are required,
    /// c defaults to 1.
    pub fn hard_params(&self) -> Result<HardParams> {
        HardParams::new(
            self.require("omega")?,
            self.require("eps1")?,
            self.require("eps2")?,
            self.get("c").unwrap_or(1.0),
        )
    }

    pub fn soft_params(&self) -> Result<SoftParams> {
        SoftParams::new(self.require("nu")?)
    }

    pub fn cutoff(&self) -> Result<Option<usize>> {
        match self.get("cutoff") {
            None => Ok(None),
            Some(v) => {
                if v.fract() != 0.0 || v < 4.0 || v > 1e6 {
                    return Err(Error::InvalidParameter(format!(
                        "cutoff must be an integer >= 4, got {v}"
                    )));
                }
                Ok(Some(v as usize))
            }
        }
    }
}
