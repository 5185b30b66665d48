//! Data files and the run manifest.
//!
//! CSV schemas are fixed: `t,p0,p_bar` for series, `phi_x,phi_y,p_bar` for
//! grids and scans, `t,c_norm` for coherence. Reals are written with 17
//! significant digits, which round-trips every `f64`. An undefined running
//! average (`t < 2`) is an empty field in CSV and `null` in JSON.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::{OutputFormat, RunConfig};
use crate::observables::SeriesRecord;

pub const SERIES_HEADER: &str = "t,p0,p_bar";
pub const GRID_HEADER: &str = "phi_x,phi_y,p_bar";
pub const COHERENCE_HEADER: &str = "t,c_norm";

pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(path: &Path, body: &str) -> io::Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(body.as_bytes())?;
    f.flush()
}

fn json_body(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_series(dir: &Path, format: OutputFormat, records: &[SeriesRecord]) -> io::Result<PathBuf> {
    match format {
        OutputFormat::Csv => {
            let mut body = String::from(SERIES_HEADER);
            body.push('\n');
            for r in records {
                let p_bar = r.p_bar.map(fmt_real).unwrap_or_default();
                body.push_str(&format!("{},{},{}\n", r.t, fmt_real(r.p0), p_bar));
            }
            let path = dir.join("series.csv");
            write_file(&path, &body)?;
            Ok(path)
        }
        OutputFormat::Json => {
            let rows: Vec<_> = records
                .iter()
                .map(|r| json!({ "t": r.t, "p0": r.p0, "p_bar": r.p_bar }))
                .collect();
            let path = dir.join("series.json");
            write_file(&path, &json_body(&serde_json::Value::Array(rows)))?;
            Ok(path)
        }
    }
}

/// `(phi_x, phi_y, p_bar)` rows, `phi_x` the slow index.
pub fn write_grid(dir: &Path, format: OutputFormat, rows: &[(f64, f64, f64)]) -> io::Result<PathBuf> {
    match format {
        OutputFormat::Csv => {
            let mut body = String::from(GRID_HEADER);
            body.push('\n');
            for &(px, py, v) in rows {
                body.push_str(&format!("{},{},{}\n", fmt_real(px), fmt_real(py), fmt_real(v)));
            }
            let path = dir.join("grid.csv");
            write_file(&path, &body)?;
            Ok(path)
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&(px, py, v)| json!({ "phi_x": px, "phi_y": py, "p_bar": v }))
                .collect();
            let path = dir.join("grid.json");
            write_file(&path, &json_body(&serde_json::Value::Array(rows)))?;
            Ok(path)
        }
    }
}

pub fn write_coherence(dir: &Path, format: OutputFormat, rows: &[(usize, f64)]) -> io::Result<PathBuf> {
    match format {
        OutputFormat::Csv => {
            let mut body = String::from(COHERENCE_HEADER);
            body.push('\n');
            for &(t, c) in rows {
                body.push_str(&format!("{t},{}\n", fmt_real(c)));
            }
            let path = dir.join("coherence.csv");
            write_file(&path, &body)?;
            Ok(path)
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows.iter().map(|&(t, c)| json!({ "t": t, "c_norm": c })).collect();
            let path = dir.join("coherence.json");
            write_file(&path, &json_body(&serde_json::Value::Array(rows)))?;
            Ok(path)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: RunConfig,
    pub tool_version: String,
    pub outputs: Vec<String>,
    /// Wall-clock seconds; the only field that differs between reruns.
    pub duration_secs: f64,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> io::Result<PathBuf> {
        let path = dir.join("manifest.json");
        let value = serde_json::to_value(self).map_err(io::Error::other)?;
        write_file(&path, &json_body(&value))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}
