//! Benchmark front end: experiment execution, baseline sweeps, and export of
//! result tables and trajectory logs.
//!
//! Config resolution order: built-in defaults, then `--config` file, then the
//! `MVP_SIM_SEED` env var, then named flags, then `--set key=value`
//! overrides (last wins). The fully resolved config is echoed to
//! `effective_config.json` next to the results so any run can be reproduced
//! from its own output directory.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use mvp_core::config::{set_dotted_key, RunConfig, GAMMA_SWEEP, SWEEP_BASELINES};
use mvp_core::controller::Policy;
use mvp_core::episode::{run_experiment, ExperimentRow};
use mvp_core::export::{attempts_jsonl, parse_attempts_jsonl, paths_csv, results_csv};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "mvp-sim", version, about = "Entropy-grid viewpoint-controller grasping benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured policy over its gamma set and write results.
    Run(ConfigArgs),
    /// Run the full gamma grid plus all baseline policies.
    Sweep(ConfigArgs),
    /// Re-shape an attempts.jsonl log into a plot-ready paths CSV.
    ExportPaths {
        /// Trajectory log produced by `run` or `sweep`.
        jsonl_path: PathBuf,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate the resolved config and echo it as JSON.
    ValidateConfig(ConfigArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON config file; missing fields take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dotted-key override, e.g. --set controller.gamma=0.2 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Policy name: mvp, single-view, fixed-<n>, no-exploration.
    #[arg(long)]
    policy: Option<String>,
    /// Exploration cost (repeatable; one result row per value under mvp).
    #[arg(long = "gamma", value_name = "GAMMA")]
    gammas: Vec<f64>,
    /// Episodes per configuration row.
    #[arg(long)]
    runs: Option<u32>,
    /// Objects per episode.
    #[arg(long)]
    objects: Option<u32>,
    /// Root seed (episode seeds are seed + run index).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for episodes; 0 = available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve_config(args: &ConfigArgs) -> Result<RunConfig> {
    let mut tree = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => serde_json::Value::Object(Default::default()),
    };
    if let Ok(seed) = std::env::var("MVP_SIM_SEED") {
        set_dotted_key(&mut tree, "seed", &seed)?;
    }
    if let Some(policy) = &args.policy {
        set_dotted_key(&mut tree, "policy", &format!("\"{policy}\""))?;
    }
    if !args.gammas.is_empty() {
        let list = serde_json::to_string(&args.gammas)?;
        set_dotted_key(&mut tree, "gammas", &list)?;
    }
    if let Some(runs) = args.runs {
        set_dotted_key(&mut tree, "runs", &runs.to_string())?;
    }
    if let Some(objects) = args.objects {
        set_dotted_key(&mut tree, "objects", &objects.to_string())?;
    }
    if let Some(seed) = args.seed {
        set_dotted_key(&mut tree, "seed", &seed.to_string())?;
    }
    if let Some(workers) = args.workers {
        set_dotted_key(&mut tree, "workers", &workers.to_string())?;
    }
    if let Some(out) = &args.out {
        set_dotted_key(&mut tree, "output_dir", &format!("\"{}\"", out.display()))?;
    }
    for pair in &args.set {
        let (key, value) = pair
            .split_once('=')
            .with_context(|| format!("--set expects KEY=VALUE, got '{pair}'"))?;
        set_dotted_key(&mut tree, key, value)?;
    }
    let config = RunConfig::from_value(tree)?;
    config.validate()?;
    Ok(config)
}

fn print_table(rows: &[ExperimentRow]) {
    println!(
        "{:<16} {:>6} {:>9} {:>9} {:>8} {:>8} {:>8} {:>8}",
        "policy", "gamma", "attempts", "failures", "views", "success", "time_s", "mpph"
    );
    for row in rows {
        let m = &row.metrics;
        let gamma = row.gamma.map_or(String::new(), |g| format!("{g}"));
        println!(
            "{:<16} {:>6} {:>9} {:>9} {:>8.1} {:>8.3} {:>8.2} {:>8.1}",
            row.policy.name(),
            gamma,
            m.total_attempts,
            m.failures,
            m.mean_viewpoints,
            m.success_rate,
            m.mean_time,
            m.mpph
        );
    }
}

fn write_artifacts(config: &RunConfig, rows: &[ExperimentRow]) -> Result<()> {
    let dir = Path::new(&config.output_dir);
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output dir {}", dir.display()))?;
    std::fs::write(dir.join("results.csv"), results_csv(rows))?;
    std::fs::write(dir.join("attempts.jsonl"), attempts_jsonl(rows))?;
    std::fs::write(
        dir.join("effective_config.json"),
        config.to_json_pretty() + "\n",
    )?;
    Ok(())
}

fn cmd_run(args: &ConfigArgs) -> Result<()> {
    let config = resolve_config(args)?;
    let policy: Policy = config
        .policy
        .parse()
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let rows = run_experiment(
        policy,
        &config.gammas,
        config.runs,
        config.objects,
        config.seed,
        &config.sim_params(),
        config.workers,
    )?;
    write_artifacts(&config, &rows)?;
    print_table(&rows);
    Ok(())
}

fn cmd_sweep(args: &ConfigArgs) -> Result<()> {
    let config = resolve_config(args)?;
    let params = config.sim_params();
    let mut rows = run_experiment(
        Policy::Mvp,
        &GAMMA_SWEEP,
        config.runs,
        config.objects,
        config.seed,
        &params,
        config.workers,
    )?;
    for name in SWEEP_BASELINES {
        let policy: Policy = name.parse().map_err(|e| anyhow::anyhow!("{e}"))?;
        rows.extend(run_experiment(
            policy,
            &[],
            config.runs,
            config.objects,
            config.seed,
            &params,
            config.workers,
        )?);
    }
    write_artifacts(&config, &rows)?;
    print_table(&rows);
    Ok(())
}

fn cmd_export_paths(jsonl_path: &Path, out: Option<&Path>) -> Result<()> {
    let text = std::fs::read_to_string(jsonl_path)
        .with_context(|| format!("reading {}", jsonl_path.display()))?;
    let records = parse_attempts_jsonl(&text)?;
    let csv = paths_csv(&records);
    match out {
        Some(path) => std::fs::write(path, csv)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_validate_config(args: &ConfigArgs) -> Result<()> {
    let config = resolve_config(args)?;
    println!("{}", config.to_json_pretty());
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::ExportPaths { jsonl_path, out } => {
            cmd_export_paths(jsonl_path, out.as_deref())
        }
        Command::ValidateConfig(args) => cmd_validate_config(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
