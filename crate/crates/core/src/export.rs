//! Result tables and trajectory logs.
//!
//! `results.csv` carries one row per configuration; `attempts.jsonl` carries
//! one record per attempt with the full viewpoint path. Formatting is fixed
//! so identical runs produce byte-identical artifacts.

use crate::episode::ExperimentRow;
use serde::{Deserialize, Serialize};

pub const RESULTS_CSV_HEADER: &str =
    "policy,gamma,total_attempts,failures,mean_viewpoints,success_rate,mean_time_s,mpph";

pub const PATHS_CSV_HEADER: &str = "policy,gamma,run,attempt,vertex,x,y,z";

fn gamma_field(gamma: Option<f64>) -> String {
    match gamma {
        Some(g) => format!("{g}"),
        None => String::new(),
    }
}

/// Render the per-configuration metrics table.
pub fn results_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(RESULTS_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let m = &row.metrics;
        out.push_str(&format!(
            "{},{},{},{},{:.2},{:.4},{:.3},{:.1}\n",
            row.policy.name(),
            gamma_field(row.gamma),
            m.total_attempts,
            m.failures,
            m.mean_viewpoints,
            m.success_rate,
            m.mean_time,
            m.mpph
        ));
    }
    out
}

/// One attempt in the JSONL trajectory log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttemptLogRecord {
    pub run: u32,
    pub attempt: u32,
    pub policy: String,
    pub gamma: Option<f64>,
    pub seed: u64,
    pub success: bool,
    pub duration_s: f64,
    pub n_viewpoints: u32,
    pub trajectory: Vec<[f64; 3]>,
}

/// Flatten experiment rows into per-attempt log records in (row, run,
/// attempt) order.
pub fn attempt_log_records(rows: &[ExperimentRow]) -> Vec<AttemptLogRecord> {
    let mut records = Vec::new();
    for row in rows {
        for (run, episode) in row.episodes.iter().enumerate() {
            for (attempt, record) in episode.attempts.iter().enumerate() {
                records.push(AttemptLogRecord {
                    run: run as u32,
                    attempt: attempt as u32,
                    policy: record.policy.clone(),
                    gamma: row.gamma,
                    seed: row.seeds[run],
                    success: record.success,
                    duration_s: record.duration,
                    n_viewpoints: record.n_viewpoints,
                    trajectory: record
                        .trajectory
                        .iter()
                        .map(|p| [p.x, p.y, p.z])
                        .collect(),
                });
            }
        }
    }
    records
}

/// Render the JSONL trajectory log.
pub fn attempts_jsonl(rows: &[ExperimentRow]) -> String {
    let mut out = String::new();
    for record in attempt_log_records(rows) {
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct JsonlError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for JsonlError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for JsonlError {}

/// Parse a JSONL trajectory log; errors carry the 1-based line number.
pub fn parse_attempts_jsonl(text: &str) -> Result<Vec<AttemptLogRecord>, JsonlError> {
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: AttemptLogRecord = serde_json::from_str(line).map_err(|e| JsonlError {
            line: i + 1,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Columnar path export: one vertex per line, grouped by (policy, gamma)
/// and ordered by (run, attempt, vertex) within a group.
pub fn paths_csv(records: &[AttemptLogRecord]) -> String {
    let mut sorted: Vec<&AttemptLogRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (a.policy.as_str(), a.gamma.map(f64::to_bits), a.run, a.attempt).cmp(&(
            b.policy.as_str(),
            b.gamma.map(f64::to_bits),
            b.run,
            b.attempt,
        ))
    });
    let mut out = String::from(PATHS_CSV_HEADER);
    out.push('\n');
    for record in sorted {
        for (vertex, [x, y, z]) in record.trajectory.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                record.policy,
                gamma_field(record.gamma),
                record.run,
                record.attempt,
                vertex,
                x,
                y,
                z
            ));
        }
    }
    out
}
