//! Simulation core for an information-gain grasping controller.
//!
//! The workspace is represented as an entropy grid map fused from noisy,
//! occlusion-aware grasp observations. A virtual eye-in-hand camera descends
//! from `z_max` to `z_min` while a policy steers it; at the bottom the best
//! mean grasp is executed against the simulated scene. The episode engine
//! runs seeded bin-emptying benchmarks for the information-gain controller
//! and three baseline policies.

pub mod config;
pub mod controller;
pub mod episode;
pub mod export;
pub mod grasp_map;
pub mod scene;

pub use config::RunConfig;
pub use controller::{ControllerConfig, Policy, VelocityCommand, Viewpoint};
pub use episode::{AttemptRecord, EpisodeResult, Metrics, SimParams};
pub use grasp_map::{GraspEstimate, GraspObservation, GridMap, MapConfig};
pub use scene::{CameraModel, GraspTolerances, Scene, SceneParams};
