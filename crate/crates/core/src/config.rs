//! Run configuration: defaults, JSON ingestion, dotted-key overrides and
//! validation of every module's invariants before a run starts.

use crate::controller::{ControllerConfig, Policy};
use crate::episode::{EngineParams, SimParams};
use crate::grasp_map::MapConfig;
use crate::scene::{CameraModel, GraspTolerances, SceneParams};
use serde::{Deserialize, Serialize};

/// Exploration-cost grid used by the `sweep` command.
pub const GAMMA_SWEEP: [f64; 9] = [0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7];

/// Baseline policies run by the `sweep` command, in output order.
pub const SWEEP_BASELINES: [&str; 4] = ["single-view", "no-exploration", "fixed-25", "fixed-50"];

/// Full experiment configuration (simulation parameters plus run plan).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Root seed; episode seeds are derived as `seed + run_index`.
    pub seed: u64,
    /// Episodes per configuration row.
    pub runs: u32,
    /// Objects per episode.
    pub objects: u32,
    /// Policy name: `mvp`, `single-view`, `fixed-<n>`, `no-exploration`.
    pub policy: String,
    /// Exploration costs; one result row per value when the policy is `mvp`.
    pub gammas: Vec<f64>,
    /// Episode worker count; 0 means available parallelism.
    pub workers: usize,
    /// Directory for results.csv, attempts.jsonl, effective_config.json.
    pub output_dir: String,
    pub map: MapConfig,
    pub controller: ControllerConfig,
    pub camera: CameraModel,
    pub scene: SceneParams,
    pub tolerances: GraspTolerances,
    pub engine: EngineParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            runs: 7,
            objects: 20,
            policy: "mvp".to_string(),
            gammas: vec![0.0],
            workers: 0,
            output_dir: "out".to_string(),
            map: MapConfig::default(),
            controller: ControllerConfig::default(),
            camera: CameraModel::default(),
            scene: SceneParams::default(),
            tolerances: GraspTolerances::default(),
            engine: EngineParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// JSON syntax error or unknown/ill-typed field.
    Parse(String),
    /// Field-level invariant violations.
    Invalid(Vec<String>),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Parse(msg) => write!(f, "config parse error: {msg}"),
            ConfigError::Invalid(errors) => {
                writeln!(f, "invalid config:")?;
                for e in errors {
                    writeln!(f, "  - {e}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, ConfigError> {
        serde_json::from_value(value).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn policy(&self) -> Result<Policy, ConfigError> {
        self.policy
            .parse()
            .map_err(|e: crate::controller::PolicyParseError| {
                ConfigError::Invalid(vec![format!("policy: {e}")])
            })
    }

    pub fn sim_params(&self) -> SimParams {
        SimParams {
            map: self.map.clone(),
            controller: self.controller.clone(),
            camera: self.camera.clone(),
            scene: self.scene.clone(),
            tolerances: self.tolerances,
            engine: self.engine.clone(),
        }
    }

    /// Check every module invariant; collects all violations.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut errors = Vec::new();
        let mut check = |ok: bool, msg: &str| {
            if !ok {
                errors.push(msg.to_string());
            }
        };

        check(self.runs >= 1, "runs: must be >= 1");
        check(self.objects >= 1, "objects: must be >= 1");
        let policy_parse = self.policy.parse::<Policy>();
        check(
            policy_parse.is_ok(),
            "policy: expected mvp, single-view, fixed-<n>, no-exploration",
        );
        if self.policy == "mvp" {
            check(!self.gammas.is_empty(), "gammas: must be non-empty for mvp");
        }
        for g in &self.gammas {
            check(*g >= 0.0 && g.is_finite(), "gammas: must be finite and >= 0");
        }

        let m = &self.map;
        check(m.j >= 1 && m.k >= 1, "map: cell counts must be >= 1");
        check(m.cell_size > 0.0, "map.cell_size: must be > 0");
        check(
            m.quality_bins >= 1 && m.angle_bins >= 1,
            "map: bin counts must be >= 1",
        );

        let c = &self.controller;
        check(c.z_max > c.z_min, "controller: z_max must exceed z_min");
        check(c.z_min > 0.0, "controller.z_min: must be > 0");
        check(c.speed > 0.0, "controller.speed: must be > 0");
        check(c.dt > 0.0, "controller.dt: must be > 0");
        check(c.gamma >= 0.0, "controller.gamma: must be >= 0");
        check(
            c.horizontal_fraction_cap > 0.0 && c.horizontal_fraction_cap < 1.0,
            "controller.horizontal_fraction_cap: must lie in (0, 1)",
        );
        check(
            c.proportional_gain > 0.0,
            "controller.proportional_gain: must be > 0",
        );
        check(
            c.gaussian_sigma_fraction > 0.0,
            "controller.gaussian_sigma_fraction: must be > 0",
        );
        check(c.spiral_r0 >= 0.0, "controller.spiral_r0: must be >= 0");

        let cam = &self.camera;
        check(
            cam.fov_half_angle > 0.0 && cam.fov_half_angle < std::f64::consts::FRAC_PI_2,
            "camera.fov_half_angle: must lie in (0, pi/2)",
        );
        check(
            cam.noise_sigma_q >= 0.0 && cam.noise_sigma_phi >= 0.0 && cam.noise_sigma_w >= 0.0,
            "camera: noise sigmas must be >= 0",
        );
        let range_ok = |r: &[f64; 2]| r[0] <= r[1];
        check(
            range_ok(&cam.occluded_q_range)
                && cam.occluded_q_range[0] >= 0.0
                && cam.occluded_q_range[1] <= 1.0,
            "camera.occluded_q_range: must be an ordered range within [0, 1]",
        );
        check(
            range_ok(&cam.background_q_range)
                && cam.background_q_range[0] >= 0.0
                && cam.background_q_range[1] <= 1.0,
            "camera.background_q_range: must be an ordered range within [0, 1]",
        );
        check(
            range_ok(&cam.random_width_range) && cam.random_width_range[0] >= 0.0,
            "camera.random_width_range: must be an ordered non-negative range",
        );
        check(
            cam.site_influence_radius >= 0.0,
            "camera.site_influence_radius: must be >= 0",
        );

        let s = &self.scene;
        check(
            s.workspace.x_max > s.workspace.x_min && s.workspace.y_max > s.workspace.y_min,
            "scene.workspace: must have positive extent",
        );
        check(
            range_ok(&s.radius_range) && s.radius_range[0] > 0.0,
            "scene.radius_range: must be an ordered positive range",
        );
        check(
            range_ok(&s.height_range) && s.height_range[0] > 0.0,
            "scene.height_range: must be an ordered positive range",
        );
        check(
            range_ok(&s.quality_range) && s.quality_range[0] > 0.0 && s.quality_range[1] <= 1.0,
            "scene.quality_range: must be an ordered range within (0, 1]",
        );
        check(
            range_ok(&s.angle_range)
                && s.angle_range[0] >= 0.0
                && s.angle_range[1] <= std::f64::consts::PI,
            "scene.angle_range: must be an ordered range within [0, pi]",
        );
        check(
            range_ok(&s.width_range) && s.width_range[0] >= 0.0,
            "scene.width_range: must be an ordered non-negative range",
        );
        check(
            s.sites_per_object[0] >= 1 && s.sites_per_object[0] <= s.sites_per_object[1],
            "scene.sites_per_object: must be an ordered range from >= 1",
        );
        check(
            s.max_overlap >= 0.0 && s.max_overlap < 1.0,
            "scene.max_overlap: must lie in [0, 1)",
        );
        check(
            s.max_place_attempts >= 1,
            "scene.max_place_attempts: must be >= 1",
        );
        // The camera must stay above the clutter for the occlusion model.
        check(
            c.z_min > s.height_range[1],
            "controller.z_min: must exceed scene.height_range max",
        );

        let t = &self.tolerances;
        check(
            t.pos >= 0.0 && t.angle >= 0.0 && t.width >= 0.0,
            "tolerances: must be >= 0",
        );

        check(self.engine.t_overhead >= 0.0, "engine.t_overhead: must be >= 0");
        check(
            self.engine.attempt_cap_factor >= 1,
            "engine.attempt_cap_factor: must be >= 1",
        );

        if errors.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(errors))
        }
    }
}

/// Set a dotted key (e.g. `controller.gamma`) in a JSON config tree. The raw
/// value is parsed as JSON where possible, falling back to a string.
pub fn set_dotted_key(
    tree: &mut serde_json::Value,
    dotted: &str,
    raw: &str,
) -> Result<(), ConfigError> {
    let value: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut node = tree;
    let parts: Vec<&str> = dotted.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(ConfigError::Parse(format!("bad override key '{dotted}'")));
    }
    for part in &parts[..parts.len() - 1] {
        node = node
            .as_object_mut()
            .ok_or_else(|| {
                ConfigError::Parse(format!("override key '{dotted}' traverses a non-object"))
            })?
            .entry(part.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    let obj = node.as_object_mut().ok_or_else(|| {
        ConfigError::Parse(format!("override key '{dotted}' traverses a non-object"))
    })?;
    obj.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_match_expected_geometry() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.map.j, 68);
        assert_eq!(cfg.map.k, 68);
        assert_eq!(cfg.map.cell_size, 0.005);
        assert_eq!(cfg.map.quality_bins, 10);
        assert_eq!(cfg.map.angle_bins, 18);
        assert_eq!(cfg.controller.z_max, 0.5);
        assert_eq!(cfg.controller.z_min, 0.2);
        assert_eq!(cfg.controller.dt, 0.1);
        assert_eq!(cfg.controller.speed, 0.1);
    }

    #[test]
    fn json_round_trip_preserves_config() {
        let cfg = RunConfig::default();
        let json = cfg.to_json_pretty();
        let back = RunConfig::from_json(&json).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = RunConfig::from_json(r#"{"controller": {"zmax": 1.0}}"#).unwrap_err();
        match err {
            ConfigError::Parse(msg) => assert!(msg.contains("zmax"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(RunConfig::from_json(r#"{"bogus_top": 1}"#).is_err());
    }

    #[test]
    fn partial_config_takes_defaults() {
        let cfg = RunConfig::from_json(r#"{"seed": 7, "controller": {"gamma": 0.2}}"#).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.controller.gamma, 0.2);
        assert_eq!(cfg.controller.z_max, 0.5);
        assert_eq!(cfg.runs, 7);
    }

    #[test]
    fn dotted_overrides() {
        let mut tree = RunConfig::default().to_value();
        set_dotted_key(&mut tree, "controller.gamma", "0.3").unwrap();
        set_dotted_key(&mut tree, "seed", "99").unwrap();
        set_dotted_key(&mut tree, "policy", "single-view").unwrap();
        set_dotted_key(&mut tree, "gammas", "[0.1,0.2]").unwrap();
        let cfg = RunConfig::from_value(tree).unwrap();
        assert_eq!(cfg.controller.gamma, 0.3);
        assert_eq!(cfg.seed, 99);
        assert_eq!(cfg.policy, "single-view");
        assert_eq!(cfg.gammas, vec![0.1, 0.2]);
    }

    #[test]
    fn validation_reports_field_level_errors() {
        let mut cfg = RunConfig::default();
        cfg.objects = 0;
        cfg.controller.z_min = 0.6;
        let err = cfg.validate().unwrap_err();
        match err {
            ConfigError::Invalid(errors) => {
                assert!(errors.iter().any(|e| e.starts_with("objects")));
                assert!(errors.iter().any(|e| e.contains("z_max")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn z_min_must_clear_object_heights() {
        let mut cfg = RunConfig::default();
        cfg.controller.z_min = 0.05;
        assert!(cfg.validate().is_err());
    }
}
