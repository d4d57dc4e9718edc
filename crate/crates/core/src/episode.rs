//! Grasp attempts, bin-emptying episodes, and seeded experiment batches.
//!
//! An attempt starts a fresh map at the workspace center at `z_max`,
//! integrates the policy's velocity at a fixed rate while fusing
//! observations, and executes the best mean grasp once the camera reaches
//! `z_min`. Episodes repeat attempts on the evolving scene until it is empty
//! or an attempt cap is hit. Experiments run seeded episodes (in parallel
//! when the `parallel` feature is enabled) and aggregate the benchmark
//! metrics; results are independent of worker count.

use crate::controller::{
    mvp_velocity, no_exploration_velocity, spiral_waypoint, straight_descent, ControllerConfig,
    Policy, Viewpoint,
};
use crate::grasp_map::{GraspEstimate, GridMap, MapConfig, MapError};
use crate::scene::{
    execute_grasp, generate_scene, observe, CameraModel, GraspTolerances, Scene, SceneError,
    SceneParams,
};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Slack for detecting arrival at `z_min` despite accumulated rounding.
const Z_EPS: f64 = 1e-9;

/// Engine accounting parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineParams {
    /// Fixed per-attempt overhead (grasp, lift, drop), seconds.
    pub t_overhead: f64,
    /// Attempt cap = factor x object count.
    pub attempt_cap_factor: u32,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams {
            t_overhead: 5.6,
            attempt_cap_factor: 2,
        }
    }
}

/// Full simulation parameter bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct SimParams {
    pub map: MapConfig,
    pub controller: ControllerConfig,
    pub camera: CameraModel,
    pub scene: SceneParams,
    pub tolerances: GraspTolerances,
    pub engine: EngineParams,
}

/// One grasp attempt: trajectory, observation count, outcome and timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttemptRecord {
    pub policy: String,
    pub trajectory: Vec<Viewpoint>,
    pub n_viewpoints: u32,
    pub grasp: Option<GraspEstimate>,
    pub success: bool,
    pub duration: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Emptied,
    AttemptCap,
}

/// One bin-emptying episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeResult {
    pub attempts: Vec<AttemptRecord>,
    pub objects_start: u32,
    pub objects_removed: u32,
    pub terminated_by: Termination,
}

/// Aggregate benchmark statistics over a set of attempts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub total_attempts: u32,
    pub failures: u32,
    pub success_rate: f64,
    pub mean_time: f64,
    pub mpph: f64,
    pub mean_viewpoints: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    Scene(SceneError),
    Map(MapError),
}

impl std::fmt::Display for EngineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EngineError::Scene(e) => write!(f, "scene error: {e}"),
            EngineError::Map(e) => write!(f, "map error: {e}"),
        }
    }
}

impl std::error::Error for EngineError {}

impl From<SceneError> for EngineError {
    fn from(e: SceneError) -> Self {
        EngineError::Scene(e)
    }
}

impl From<MapError> for EngineError {
    fn from(e: MapError) -> Self {
        EngineError::Map(e)
    }
}

/// Run one grasp attempt on the scene. The map is reset first; the scene is
/// mutated only when the executed grasp succeeds.
pub fn run_attempt(
    scene: &mut Scene,
    map: &mut GridMap,
    policy: Policy,
    params: &SimParams,
    rng: &mut ChaCha8Rng,
) -> AttemptRecord {
    map.reset();
    let ctrl = &params.controller;
    let center = scene.workspace.center();

    let (trajectory, n_viewpoints, duration) = match policy {
        Policy::FixedSpiral { n_views } => {
            let mut trajectory = Vec::with_capacity(n_views as usize);
            let mut path_len = 0.0;
            for i in 0..n_views {
                let wp = spiral_waypoint(i, n_views, center, ctrl);
                if let Some(prev) = trajectory.last() {
                    let prev: &Viewpoint = prev;
                    path_len += ((wp.x - prev.x).powi(2)
                        + (wp.y - prev.y).powi(2)
                        + (wp.z - prev.z).powi(2))
                    .sqrt();
                }
                trajectory.push(wp);
                for obs in observe(scene, wp, map, &params.camera, rng) {
                    map.insert(&obs);
                }
            }
            // Waypoints are teleported for observation; time is charged as
            // spiral path length at the configured speed.
            (
                trajectory,
                n_views,
                path_len / ctrl.speed + params.engine.t_overhead,
            )
        }
        _ => {
            let mut p = Viewpoint {
                x: center.0,
                y: center.1,
                z: ctrl.z_max,
            };
            let mut trajectory = Vec::new();
            let mut n_viewpoints = 0u32;
            loop {
                trajectory.push(p);
                let observe_now = !matches!(policy, Policy::SingleView) || n_viewpoints == 0;
                if observe_now {
                    for obs in observe(scene, p, map, &params.camera, rng) {
                        map.insert(&obs);
                    }
                    n_viewpoints += 1;
                }
                let v = match policy {
                    Policy::Mvp => mvp_velocity(map, p, ctrl, &params.camera),
                    Policy::NoExploration => no_exploration_velocity(map, p, ctrl),
                    Policy::SingleView => straight_descent(ctrl),
                    Policy::FixedSpiral { .. } => unreachable!(),
                };
                p = Viewpoint {
                    x: p.x + v.vx * ctrl.dt,
                    y: p.y + v.vy * ctrl.dt,
                    z: p.z + v.vz * ctrl.dt,
                };
                if p.z <= ctrl.z_min + Z_EPS {
                    break;
                }
            }
            let n_steps = trajectory.len() as f64;
            (
                trajectory,
                n_viewpoints,
                n_steps * ctrl.dt + params.engine.t_overhead,
            )
        }
    };

    let (grasp, success) = match map.best_cell() {
        Some((_, estimate)) => {
            let ok = execute_grasp(scene, &estimate, &params.tolerances, rng);
            (Some(estimate), ok)
        }
        None => (None, false),
    };

    AttemptRecord {
        policy: policy.name(),
        trajectory,
        n_viewpoints,
        grasp,
        success,
        duration,
    }
}

/// Run a bin-emptying episode: repeated attempts on a freshly generated
/// scene until it is emptied or the attempt cap is reached. Fully
/// determined by `(n_objects, seed, policy, params)`.
pub fn run_episode(
    n_objects: u32,
    seed: u64,
    policy: Policy,
    params: &SimParams,
) -> Result<EpisodeResult, EngineError> {
    use rand::SeedableRng;
    let mut scene = generate_scene(n_objects, seed, &params.scene)?;
    let mut map = GridMap::new(&params.map)?;
    // Scene generation consumed stream 0 of this seed; observations and
    // grasp adjudication draw from stream 1.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);

    let cap = n_objects.saturating_mul(params.engine.attempt_cap_factor);
    let mut attempts = Vec::new();
    let terminated_by = loop {
        if scene.remaining_objects() == 0 {
            break Termination::Emptied;
        }
        if attempts.len() as u32 >= cap {
            break Termination::AttemptCap;
        }
        attempts.push(run_attempt(&mut scene, &mut map, policy, params, &mut rng));
    };
    Ok(EpisodeResult {
        objects_start: n_objects,
        objects_removed: n_objects - scene.remaining_objects() as u32,
        attempts,
        terminated_by,
    })
}

/// Episodes for a seed list, sequentially.
pub fn run_episodes_sequential(
    seeds: &[u64],
    n_objects: u32,
    policy: Policy,
    params: &SimParams,
) -> Vec<Result<EpisodeResult, EngineError>> {
    seeds
        .iter()
        .map(|&seed| run_episode(n_objects, seed, policy, params))
        .collect()
}

/// Episodes for a seed list on a rayon pool. `workers == 0` uses the
/// default parallelism. Results are ordered by seed index, so the output is
/// identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn run_episodes_parallel(
    seeds: &[u64],
    n_objects: u32,
    policy: Policy,
    params: &SimParams,
    workers: usize,
) -> Vec<Result<EpisodeResult, EngineError>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool");
    pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| run_episode(n_objects, seed, policy, params))
            .collect()
    })
}

/// Episodes for a seed list. Uses the parallel path when built with the
/// `parallel` feature and `workers != 1`; otherwise runs sequentially.
pub fn run_episodes(
    seeds: &[u64],
    n_objects: u32,
    policy: Policy,
    params: &SimParams,
    workers: usize,
) -> Vec<Result<EpisodeResult, EngineError>> {
    #[cfg(feature = "parallel")]
    {
        if workers != 1 {
            return run_episodes_parallel(seeds, n_objects, policy, params, workers);
        }
    }
    let _ = workers;
    run_episodes_sequential(seeds, n_objects, policy, params)
}

/// Aggregate metrics for a set of attempts; `None` when the set is empty.
pub fn compute_metrics(attempts: &[AttemptRecord]) -> Option<Metrics> {
    if attempts.is_empty() {
        return None;
    }
    let total = attempts.len() as u32;
    let failures = attempts.iter().filter(|a| !a.success).count() as u32;
    let success_rate = (total - failures) as f64 / total as f64;
    let mean_time = attempts.iter().map(|a| a.duration).sum::<f64>() / total as f64;
    let mean_viewpoints =
        attempts.iter().map(|a| a.n_viewpoints as f64).sum::<f64>() / total as f64;
    Some(Metrics {
        total_attempts: total,
        failures,
        success_rate,
        mean_time,
        mpph: 3600.0 / mean_time * success_rate,
        mean_viewpoints,
    })
}

/// One configuration row of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub policy: Policy,
    pub gamma: Option<f64>,
    pub seeds: Vec<u64>,
    pub episodes: Vec<EpisodeResult>,
    pub metrics: Metrics,
}

impl ExperimentRow {
    pub fn all_attempts(&self) -> impl Iterator<Item = &AttemptRecord> {
        self.episodes.iter().flat_map(|e| e.attempts.iter())
    }
}

/// Run `n_runs` episodes per configuration with seeds `base_seed + i`.
///
/// For the information-gain policy one row is produced per value in
/// `gammas`; baselines ignore `gammas` and produce a single row. All rows
/// share the same episode seeds, pairing scenes across configurations.
pub fn run_experiment(
    policy: Policy,
    gammas: &[f64],
    n_runs: u32,
    n_objects: u32,
    base_seed: u64,
    params: &SimParams,
    workers: usize,
) -> Result<Vec<ExperimentRow>, EngineError> {
    let row_gammas: Vec<Option<f64>> = match policy {
        Policy::Mvp => gammas.iter().copied().map(Some).collect(),
        _ => vec![None],
    };
    let seeds: Vec<u64> = (0..n_runs)
        .map(|i| base_seed.wrapping_add(i as u64))
        .collect();
    let mut rows = Vec::with_capacity(row_gammas.len());
    for gamma in row_gammas {
        let mut row_params = params.clone();
        if let Some(g) = gamma {
            row_params.controller.gamma = g;
        }
        let mut episodes = Vec::with_capacity(seeds.len());
        for result in run_episodes(&seeds, n_objects, policy, &row_params, workers) {
            episodes.push(result?);
        }
        let attempts: Vec<AttemptRecord> = episodes
            .iter()
            .flat_map(|e| e.attempts.iter().cloned())
            .collect();
        let metrics = compute_metrics(&attempts).unwrap_or(Metrics {
            total_attempts: 0,
            failures: 0,
            success_rate: 0.0,
            mean_time: 0.0,
            mpph: 0.0,
            mean_viewpoints: 0.0,
        });
        rows.push(ExperimentRow {
            policy,
            gamma,
            seeds: seeds.clone(),
            episodes,
            metrics,
        });
    }
    Ok(rows)
}
