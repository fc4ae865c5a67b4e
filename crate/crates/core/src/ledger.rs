//! Findings ledger: an append-only JSONL log of observed violations and
//! noteworthy events, each replayable in isolation.
//!
//! A finding's observation is a deterministic function of
//! `(conjecture_id, input, tolerances)`: exact modules replay
//! bit-identically, numeric modules within their stated tolerances.

use std::fmt;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("io error on ledger: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed ledger line {line}: {source}")]
    Malformed {
        line: usize,
        source: serde_json::Error,
    },
    #[error("finding `{0}` not present in the ledger")]
    MissingFinding(String),
    #[error("finding `{0}` has no registered replayer")]
    Unreplayable(String),
}

/// Severity of a finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    #[serde(rename = "VIOLATION_CANDIDATE")]
    ViolationCandidate,
    #[serde(rename = "CRITICAL")]
    Critical,
    #[serde(rename = "INFO")]
    Info,
}

impl Severity {
    pub fn is_violation(self) -> bool {
        matches!(self, Severity::ViolationCandidate | Severity::Critical)
    }
}

/// One ledger record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Finding {
    pub id: String,
    pub conjecture_id: String,
    /// Canonical serialization of the trial input; enough to replay.
    pub input: Value,
    pub observation: String,
    pub severity: Severity,
    pub seed: u64,
    pub trial_index: u64,
    pub tolerances: Value,
    pub artifact_version: String,
    pub timestamp: String,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl Finding {
    pub fn new(
        conjecture_id: &str,
        input: Value,
        observation: String,
        severity: Severity,
        seed: u64,
        trial_index: u64,
        tolerances: Value,
    ) -> Finding {
        let digest = fnv1a(
            format!("{conjecture_id}|{seed}|{trial_index}|{input}|{observation}").as_bytes(),
        );
        Finding {
            id: format!("{conjecture_id}-{seed}-{trial_index}-{digest:016x}"),
            conjecture_id: conjecture_id.to_string(),
            input,
            observation,
            severity,
            seed,
            trial_index,
            tolerances,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }
}

/// Append-only JSONL ledger.
pub struct Ledger {
    path: PathBuf,
}

impl Ledger {
    pub fn at(path: impl Into<PathBuf>) -> Ledger {
        Ledger { path: path.into() }
    }

    /// Resolve the ledger path: explicit flag, else POLYCONJ_LEDGER, else
    /// `polyconj-ledger.jsonl` in the working directory.
    pub fn resolve(explicit: Option<&Path>) -> Ledger {
        if let Some(p) = explicit {
            return Ledger::at(p);
        }
        if let Ok(env) = std::env::var("POLYCONJ_LEDGER") {
            if !env.is_empty() {
                return Ledger::at(env);
            }
        }
        Ledger::at("polyconj-ledger.jsonl")
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append_all(&self, findings: &[Finding]) -> Result<(), LedgerError> {
        if findings.is_empty() {
            return Ok(());
        }
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        for finding in findings {
            let line = serde_json::to_string(finding).expect("finding serializes");
            writeln!(f, "{line}")?;
        }
        Ok(())
    }

    pub fn read_all(&self) -> Result<Vec<Finding>, LedgerError> {
        if !self.path.exists() {
            return Ok(Vec::new());
        }
        let f = std::fs::File::open(&self.path)?;
        let mut out = Vec::new();
        for (idx, line) in BufReader::new(f).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let finding: Finding = serde_json::from_str(&line).map_err(|source| {
                LedgerError::Malformed {
                    line: idx + 1,
                    source,
                }
            })?;
            out.push(finding);
        }
        Ok(out)
    }

    pub fn find(&self, id: &str) -> Result<Finding, LedgerError> {
        self.read_all()?
            .into_iter()
            .find(|f| f.id == id)
            .ok_or_else(|| LedgerError::MissingFinding(id.to_string()))
    }
}

/// Replay verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReplayStatus {
    Confirmed,
    NotReproduced { fresh_observation: String },
}

impl fmt::Display for ReplayStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayStatus::Confirmed => write!(f, "CONFIRMED"),
            ReplayStatus::NotReproduced { fresh_observation } => {
                write!(f, "NOT_REPRODUCED (fresh observation: {fresh_observation})")
            }
        }
    }
}

/// Recompute the observation for a finding from its recorded input and
/// compare bit-identically.
pub fn replay(finding: &Finding) -> Result<ReplayStatus, LedgerError> {
    let fresh = crate::report::replay_observation(&finding.conjecture_id, &finding.input)
        .ok_or_else(|| LedgerError::Unreplayable(finding.id.clone()))?;
    if fresh == finding.observation {
        Ok(ReplayStatus::Confirmed)
    } else {
        Ok(ReplayStatus::NotReproduced {
            fresh_observation: fresh,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_and_read_round_trip() {
        let dir =
            std::env::temp_dir().join(format!("polyconj-ledger-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ledger.jsonl");
        let _ = std::fs::remove_file(&path);
        let ledger = Ledger::at(&path);
        let f1 = Finding::new(
            "test.alpha",
            serde_json::json!({"poly": ["1", "0", "1"]}),
            "obs-1".into(),
            Severity::Info,
            7,
            0,
            serde_json::json!({}),
        );
        let f2 = Finding::new(
            "test.beta",
            serde_json::json!({"x": 1}),
            "obs-2".into(),
            Severity::ViolationCandidate,
            7,
            3,
            serde_json::json!({"tol": 1e-9}),
        );
        ledger.append_all(&[f1.clone()]).unwrap();
        ledger.append_all(&[f2.clone()]).unwrap();
        let all = ledger.read_all().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].id, f1.id);
        assert_eq!(all[1].observation, "obs-2");
        assert!(ledger.find(&f2.id).is_ok());
        assert!(matches!(
            ledger.find("nope"),
            Err(LedgerError::MissingFinding(_))
        ));
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn severity_serialization_is_upper_snake() {
        let s = serde_json::to_string(&Severity::ViolationCandidate).unwrap();
        assert_eq!(s, "\"VIOLATION_CANDIDATE\"");
    }
}
