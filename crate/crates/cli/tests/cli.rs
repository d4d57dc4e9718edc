//! End-to-end checks of the `mvp-sim` binary: artifact layout, config
//! precedence and round-trip, and the paths exporter.

use std::path::Path;
use std::process::{Command, Output};

fn mvp_sim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mvp-sim"))
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("spawn mvp-sim");
    assert!(
        out.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|_| panic!("missing {name}"))
}

#[test]
fn run_writes_artifacts_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(mvp_sim().args([
        "run",
        "--policy",
        "mvp",
        "--gamma",
        "0.1",
        "--runs",
        "1",
        "--objects",
        "2",
        "--seed",
        "7",
        "--workers",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("mvp"), "table missing policy row: {stdout}");
    let csv = read(dir.path(), "results.csv");
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("mvp,0.1,"));
    let jsonl = read(dir.path(), "attempts.jsonl");
    assert!(!jsonl.is_empty());
    let effective = read(dir.path(), "effective_config.json");
    assert!(effective.contains("\"seed\": 7"));
}

#[test]
fn single_view_reports_one_viewpoint() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(mvp_sim().args([
        "run",
        "--policy",
        "single-view",
        "--runs",
        "1",
        "--objects",
        "2",
        "--seed",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let csv = read(dir.path(), "results.csv");
    let row = csv.lines().nth(1).unwrap();
    let mean_viewpoints = row.split(',').nth(4).unwrap();
    assert_eq!(mean_viewpoints, "1.00");
}

#[test]
fn zero_objects_is_a_config_error() {
    let out = mvp_sim()
        .args(["run", "--objects", "0", "--out", "/tmp/unused"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("objects"), "stderr: {stderr}");
}

#[test]
fn unknown_config_key_is_rejected_with_its_name() {
    let out = mvp_sim()
        .args(["validate-config", "--set", "controller.gama=0.1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("gama"), "stderr: {stderr}");
}

#[test]
fn seed_precedence_env_then_flags_then_set() {
    // Env var overrides the default...
    let out = run_ok(mvp_sim().env("MVP_SIM_SEED", "111").args(["validate-config"]));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"seed\": 111"));
    // ...named flag overrides env...
    let out = run_ok(
        mvp_sim()
            .env("MVP_SIM_SEED", "111")
            .args(["validate-config", "--seed", "222"]),
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"seed\": 222"));
    // ...and --set has the last word.
    let out = run_ok(mvp_sim().env("MVP_SIM_SEED", "111").args([
        "validate-config",
        "--seed",
        "222",
        "--set",
        "seed=333",
    ]));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"seed\": 333"));
}

#[test]
fn effective_config_reproduces_identical_artifacts() {
    let dir_a = tempfile::tempdir().unwrap();
    run_ok(mvp_sim().args([
        "run",
        "--policy",
        "mvp",
        "--gamma",
        "0.2",
        "--runs",
        "2",
        "--objects",
        "3",
        "--seed",
        "19",
        "--out",
        dir_a.path().to_str().unwrap(),
    ]));
    let dir_b = tempfile::tempdir().unwrap();
    let effective = dir_a.path().join("effective_config.json");
    run_ok(mvp_sim().args([
        "run",
        "--config",
        effective.to_str().unwrap(),
        "--out",
        dir_b.path().to_str().unwrap(),
    ]));
    assert_eq!(read(dir_a.path(), "results.csv"), read(dir_b.path(), "results.csv"));
    assert_eq!(
        read(dir_a.path(), "attempts.jsonl"),
        read(dir_b.path(), "attempts.jsonl")
    );
}

#[test]
fn export_paths_counts_spiral_vertices() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(mvp_sim().args([
        "run",
        "--policy",
        "fixed-50",
        "--runs",
        "1",
        "--objects",
        "2",
        "--seed",
        "5",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let jsonl = dir.path().join("attempts.jsonl");
    let out = run_ok(mvp_sim().args(["export-paths", jsonl.to_str().unwrap()]));
    let csv = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "policy,gamma,run,attempt,vertex,x,y,z");
    let attempts = std::fs::read_to_string(&jsonl).unwrap().lines().count();
    assert_eq!(lines.len() - 1, attempts * 50, "50 vertices per attempt");
}

#[test]
fn export_paths_empty_log_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    std::fs::write(&path, "").unwrap();
    let out = run_ok(mvp_sim().args(["export-paths", path.to_str().unwrap()]));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "policy,gamma,run,attempt,vertex,x,y,z\n"
    );
}

#[test]
fn export_paths_reports_malformed_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        "{\"run\":0,\"attempt\":0,\"policy\":\"mvp\",\"gamma\":null,\"seed\":1,\"success\":true,\"duration_s\":1.0,\"n_viewpoints\":1,\"trajectory\":[]}\ngarbage\n",
    )
    .unwrap();
    let out = mvp_sim()
        .args(["export-paths", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn exploration_cost_shrinks_horizontal_extent() {
    // Aggregate horizontal bounding box of logged paths: strong exploration
    // (gamma 0.1) should roam wider than strong convergence (gamma 0.7).
    let dir = tempfile::tempdir().unwrap();
    run_ok(mvp_sim().args([
        "run",
        "--policy",
        "mvp",
        "--gamma",
        "0.1",
        "--gamma",
        "0.7",
        "--runs",
        "3",
        "--objects",
        "8",
        "--seed",
        "23",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let jsonl = read(dir.path(), "attempts.jsonl");
    let records = mvp_core::export::parse_attempts_jsonl(&jsonl).unwrap();
    let bbox_area = |gamma: f64| -> f64 {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for r in records.iter().filter(|r| r.gamma == Some(gamma)) {
            for v in &r.trajectory {
                for d in 0..2 {
                    min[d] = min[d].min(v[d]);
                    max[d] = max[d].max(v[d]);
                }
            }
        }
        (max[0] - min[0]) * (max[1] - min[1])
    };
    let wide = bbox_area(0.1);
    let tight = bbox_area(0.7);
    assert!(
        tight < wide,
        "expected gamma 0.7 paths ({tight:.5}) tighter than gamma 0.1 ({wide:.5})"
    );
}

#[test]
fn sweep_smoke_emits_thirteen_rows() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(mvp_sim().args([
        "sweep",
        "--runs",
        "1",
        "--objects",
        "1",
        "--seed",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let csv = read(dir.path(), "results.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 14, "header + 9 gamma rows + 4 baselines");
    let policies: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(policies[..9], vec!["mvp"; 9][..]);
    assert_eq!(
        &policies[9..],
        &["single-view", "no-exploration", "fixed-25", "fixed-50"]
    );
}
