//! File formats for the command-line front end: TPM input (JSON or
//! headerless CSV), state input (JSON array), and the run manifest.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{PhiError, Result};
use crate::net::{SystemState, Tpm};

#[derive(Serialize, Deserialize)]
struct TpmFile {
    nodes: usize,
    tpm: Vec<Vec<f64>>,
}

/// Reads a TPM from JSON (`{"nodes": D, "tpm": [[...]]}`) or headerless
/// CSV (one row per source state, one column per node). The format is
/// chosen by the leading character of the file.
pub fn load_tpm(path: &Path) -> Result<Tpm> {
    let raw = fs::read_to_string(path)
        .map_err(|e| PhiError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let trimmed = raw.trim_start();
    let rows = if trimmed.starts_with('{') {
        let file: TpmFile = serde_json::from_str(trimmed)
            .map_err(|e| PhiError::InvalidConfig(format!("bad TPM JSON: {e}")))?;
        if file.tpm.iter().any(|r| r.len() != file.nodes) {
            return Err(PhiError::InvalidShape {
                rows: file.tpm.len(),
                cols: file.tpm.first().map_or(0, |r| r.len()),
            });
        }
        file.tpm
    } else {
        let mut rows = Vec::new();
        for line in raw.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split(',').map(|cell| cell.trim().parse::<f64>()).collect();
            rows.push(row.map_err(|e| PhiError::InvalidConfig(format!("bad TPM CSV: {e}")))?);
        }
        rows
    };
    Tpm::validate(rows)
}

/// Reads a state as a JSON array of 0/1 values.
pub fn load_state(path: &Path) -> Result<SystemState> {
    let raw = fs::read_to_string(path)
        .map_err(|e| PhiError::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let values: Vec<u8> = serde_json::from_str(&raw)
        .map_err(|e| PhiError::InvalidConfig(format!("bad state JSON: {e}")))?;
    if values.iter().any(|&v| v > 1) {
        return Err(PhiError::InvalidConfig("state entries must be 0 or 1".into()));
    }
    Ok(SystemState(values))
}

pub fn write_tpm(path: &Path, tpm: &Tpm) -> Result<()> {
    let file = TpmFile { nodes: tpm.node_count(), tpm: tpm.rows().to_vec() };
    write_json(path, &file)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| PhiError::InvalidConfig(format!("serialization failed: {e}")))?;
    fs::write(path, body + "\n")
        .map_err(|e| PhiError::InvalidConfig(format!("cannot write {}: {e}", path.display())))
}

/// Full record of a run: what was executed, with which resolved
/// parameters, when, and by which tool version.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub tool_version: String,
    pub started: String,
    pub finished: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn load_tpm_json_roundtrip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("t.json");
        fs::write(&path, r#"{"nodes": 2, "tpm": [[0,0],[0,1],[1,0],[1,1]]}"#).unwrap();
        let tpm = load_tpm(&path).unwrap();
        assert_eq!(tpm.node_count(), 2);
        assert_eq!(tpm.on_probability(1, 1), 1.0);
        let out = dir.path().join("o.json");
        write_tpm(&out, &tpm).unwrap();
        assert_eq!(load_tpm(&out).unwrap(), tpm);
    }

    #[test]
    fn load_tpm_csv() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("t.csv");
        fs::write(&path, "0,0\n0.5, 1\n1,0\n1,1\n").unwrap();
        let tpm = load_tpm(&path).unwrap();
        assert_eq!(tpm.on_probability(1, 0), 0.5);
    }

    #[test]
    fn load_tpm_bad_shape() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("t.csv");
        fs::write(&path, "0,0\n0,1\n1,0\n").unwrap();
        assert!(matches!(load_tpm(&path), Err(PhiError::InvalidShape { .. })));
    }

    #[test]
    fn load_state_rejects_non_binary() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("s.json");
        fs::write(&path, "[1, 0, 2]").unwrap();
        assert!(load_state(&path).is_err());
        fs::write(&path, "[1, 0, 1]").unwrap();
        assert_eq!(load_state(&path).unwrap(), SystemState(vec![1, 0, 1]));
    }
}
