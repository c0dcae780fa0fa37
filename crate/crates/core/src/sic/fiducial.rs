//! Fiducial vector files.
//!
//! Two formats are accepted. The text form:
//!
//! ```text
//! # source: tetrahedron
//! dim 2
//! tol 1e-10
//! 0.8880738339771153 0
//! 0.3250575836718682 0.3250575836718682
//! ```
//!
//! one `<re> <im>` line per amplitude, `#` starting a comment. The JSON form is
//! `{"dim": 2, "tol": 1e-10, "amplitudes": [[re, im], ...]}` with an optional
//! `"source"`. Both writers emit shortest round-trip decimals, so save/load is
//! bit-exact.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vector_norm, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct FiducialRecord {
    pub dim: usize,
    pub amplitudes: Vec<C64>,
    pub source: String,
    pub tolerance: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonFiducial {
    dim: usize,
    tol: f64,
    amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

impl FiducialRecord {
    pub fn new(amplitudes: Vec<C64>, source: impl Into<String>, tolerance: f64) -> Result<Self> {
        let rec = Self {
            dim: amplitudes.len(),
            amplitudes,
            source: source.into(),
            tolerance,
        };
        rec.check_norm()?;
        Ok(rec)
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }

    pub fn check_norm(&self) -> Result<()> {
        let norm = self.norm();
        let deviation = (norm - 1.0).abs();
        if deviation.is_nan() || deviation > self.tolerance {
            return Err(Error::NotUnitNorm {
                norm,
                tol: self.tolerance,
            });
        }
        Ok(())
    }

    pub fn normalized(&self) -> Vec<C64> {
        let n = self.norm();
        self.amplitudes.iter().map(|z| z / n).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.source.is_empty() {
            out.push_str(&format!("# source: {}\n", self.source));
        }
        out.push_str(&format!("dim {}\n", self.dim));
        out.push_str(&format!("tol {:?}\n", self.tolerance));
        for z in &self.amplitudes {
            out.push_str(&format!("{:?} {:?}\n", z.re, z.im));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let j = JsonFiducial {
            dim: self.dim,
            tol: self.tolerance,
            amplitudes: self.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
            source: (!self.source.is_empty()).then(|| self.source.clone()),
        };
        serde_json::to_string_pretty(&j).expect("fiducial serializes")
    }

    /// Writes the text form, or JSON when the path ends in `.json`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let body = if path.extension().is_some_and(|e| e == "json") {
            self.to_json()
        } else {
            self.to_text()
        };
        std::fs::write(path, body)?;
        Ok(())
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("invalid number `{tok}`")))
}

fn parse_text(text: &str, default_source: &str) -> Result<FiducialRecord> {
    let mut source = None;
    let mut dim = None;
    let mut tolerance = None;
    let mut amplitudes = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        if let Some(rest) = raw.trim().strip_prefix("# source:") {
            source = Some(rest.trim().to_string());
            continue;
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match (dim, tolerance) {
            (None, _) => {
                if toks.len() != 2 || toks[0] != "dim" {
                    return Err(parse_err(line, "expected `dim <d>`"));
                }
                let d: usize = toks[1]
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid dimension `{}`", toks[1])))?;
                if d < 2 {
                    return Err(parse_err(line, "dimension must be at least 2"));
                }
                dim = Some(d);
            }
            (Some(_), None) => {
                if toks.len() != 2 || toks[0] != "tol" {
                    return Err(parse_err(line, "expected `tol <float>`"));
                }
                tolerance = Some(parse_f64(toks[1], line)?);
            }
            (Some(d), Some(_)) => {
                if amplitudes.len() == d {
                    return Err(parse_err(line, format!("more than {d} amplitude lines")));
                }
                if toks.len() != 2 {
                    return Err(parse_err(line, "expected `<re> <im>`"));
                }
                amplitudes.push(C64::new(
                    parse_f64(toks[0], line)?,
                    parse_f64(toks[1], line)?,
                ));
            }
        }
    }

    let dim = dim.ok_or_else(|| parse_err(last_line, "missing `dim` line"))?;
    let tolerance = tolerance.ok_or_else(|| parse_err(last_line, "missing `tol` line"))?;
    if amplitudes.len() != dim {
        return Err(parse_err(
            last_line,
            format!("truncated: {} of {dim} amplitudes", amplitudes.len()),
        ));
    }
    FiducialRecord::new(
        amplitudes,
        source.unwrap_or_else(|| default_source.to_string()),
        tolerance,
    )
}

fn parse_json(text: &str, default_source: &str) -> Result<FiducialRecord> {
    let j: JsonFiducial = serde_json::from_str(text)?;
    if j.amplitudes.len() != j.dim {
        return Err(Error::DimensionMismatch {
            expected: j.dim,
            found: j.amplitudes.len(),
        });
    }
    FiducialRecord::new(
        j.amplitudes
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect(),
        j.source.unwrap_or_else(|| default_source.to_string()),
        j.tol,
    )
}

/// Parses either format (JSON is detected by a leading `{`).
pub fn parse_fiducial(text: &str, default_source: &str) -> Result<FiducialRecord> {
    if text.trim_start().starts_with('{') {
        parse_json(text, default_source)
    } else {
        parse_text(text, default_source)
    }
}

pub fn load_fiducial(path: &Path) -> Result<FiducialRecord> {
    let text = std::fs::read_to_string(path)?;
    parse_fiducial(&text, &path.display().to_string())
}
