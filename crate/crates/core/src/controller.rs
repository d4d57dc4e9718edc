//! Viewpoint policies: the information-gain controller and three baselines.
//!
//! The information-gain policy scores a candidate viewpoint above every grid
//! cell by the Gaussian-weighted mean of normalized cell entropy over the
//! cells that viewpoint would observe, minus a height-scaled distance cost to
//! the current best grasp, then steers horizontally toward the argmax at a
//! constant end-effector speed.

use crate::grasp_map::GridMap;
use crate::scene::{axis_window, CameraModel};
use serde::{Deserialize, Serialize};

/// Camera position above the workspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewpoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Constant-speed steering output; `vz` is always negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VelocityCommand {
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
}

impl VelocityCommand {
    pub fn norm(&self) -> f64 {
        (self.vx * self.vx + self.vy * self.vy + self.vz * self.vz).sqrt()
    }
}

/// Controller parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerConfig {
    /// Exploration cost weight.
    pub gamma: f64,
    /// Starting height, metres.
    pub z_max: f64,
    /// Height at which the grasp is executed, metres.
    pub z_min: f64,
    /// Constant end-effector speed, m/s.
    pub speed: f64,
    /// Control period, seconds.
    pub dt: f64,
    /// Gaussian weighting sigma as a fraction of the footprint half-width.
    pub gaussian_sigma_fraction: f64,
    /// Cap on the horizontal share of speed (lambda, in (0,1)).
    pub horizontal_fraction_cap: f64,
    /// Proportional gain toward the target, 1/s (kappa).
    pub proportional_gain: f64,
    /// Spiral baseline: starting radius, metres.
    pub spiral_r0: f64,
    /// Spiral baseline: angle step per waypoint, radians.
    pub spiral_dtheta: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig {
            gamma: 0.0,
            z_max: 0.5,
            z_min: 0.2,
            speed: 0.1,
            dt: 0.1,
            gaussian_sigma_fraction: 0.5,
            horizontal_fraction_cap: 0.9,
            proportional_gain: 2.0,
            spiral_r0: 0.12,
            spiral_dtheta: 2.5,
        }
    }
}

/// Policy selector. CLI names: `mvp`, `single-view`, `fixed-<n>`,
/// `no-exploration`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    Mvp,
    SingleView,
    FixedSpiral { n_views: u32 },
    NoExploration,
}

impl Policy {
    pub fn name(&self) -> String {
        match self {
            Policy::Mvp => "mvp".to_string(),
            Policy::SingleView => "single-view".to_string(),
            Policy::FixedSpiral { n_views } => format!("fixed-{n_views}"),
            Policy::NoExploration => "no-exploration".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyParseError(pub String);

impl std::fmt::Display for PolicyParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "unknown policy '{}' (expected mvp, single-view, fixed-<n>, no-exploration)",
            self.0
        )
    }
}

impl std::error::Error for PolicyParseError {}

impl std::str::FromStr for Policy {
    type Err = PolicyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mvp" => Ok(Policy::Mvp),
            "single-view" => Ok(Policy::SingleView),
            "no-exploration" => Ok(Policy::NoExploration),
            other => {
                if let Some(n) = other.strip_prefix("fixed-") {
                    if let Ok(n_views) = n.parse::<u32>() {
                        if n_views >= 2 {
                            return Ok(Policy::FixedSpiral { n_views });
                        }
                    }
                }
                Err(PolicyParseError(other.to_string()))
            }
        }
    }
}

/// Height-scaled horizontal distance from a viewpoint to the best grasp.
/// Zero at `z_max`, full distance at `z_min`.
pub fn cost(p: Viewpoint, best_xy: (f64, f64), cfg: &ControllerConfig) -> f64 {
    let dist = ((p.x - best_xy.0).powi(2) + (p.y - best_xy.1).powi(2)).sqrt();
    dist * (1.0 - (p.z - cfg.z_min) / (cfg.z_max - cfg.z_min))
}

/// Cell entropies scaled into [0, 1] by the maximum ln N_q.
fn normalized_entropy(map: &GridMap) -> Vec<f64> {
    let h_max = (map.quality_bins() as f64).ln();
    let mut h = map.entropy_values();
    if h_max > 0.0 {
        for v in &mut h {
            *v /= h_max;
        }
    } else {
        h.fill(0.0);
    }
    h
}

struct AxisWeights {
    lo: usize,
    hi: usize,
    weights: Vec<f64>,
    sum: f64,
}

/// Gaussian weights over the axis window around `center`, measured from the
/// geometric center of the clipped window.
fn axis_weights(
    origin: f64,
    cell_size: f64,
    count: usize,
    center: f64,
    hw: f64,
    sigma: f64,
) -> Option<AxisWeights> {
    let (lo, hi) = axis_window(origin, cell_size, count, center, hw)?;
    let coord = |i: usize| origin + (i as f64 + 0.5) * cell_size;
    let mid = 0.5 * (coord(lo) + coord(hi));
    let inv = 1.0 / (2.0 * sigma * sigma);
    let mut weights = Vec::with_capacity(hi - lo + 1);
    let mut sum = 0.0;
    for i in lo..=hi {
        let d = coord(i) - mid;
        let w = (-d * d * inv).exp();
        weights.push(w);
        sum += w;
    }
    Some(AxisWeights {
        lo,
        hi,
        weights,
        sum,
    })
}

fn gain_for_windows(
    map: &GridMap,
    h_norm: &[f64],
    wx: &AxisWeights,
    wy: &AxisWeights,
) -> f64 {
    let k_cells = map.k_cells();
    let mut total = 0.0;
    for j in wx.lo..=wx.hi {
        let row = &h_norm[j * k_cells + wy.lo..=j * k_cells + wy.hi];
        let mut row_sum = 0.0;
        for (w, h) in wy.weights.iter().zip(row) {
            row_sum += w * h;
        }
        total += wx.weights[j - wx.lo] * row_sum;
    }
    total / (wx.sum * wy.sum)
}

fn info_gain_at(
    map: &GridMap,
    h_norm: &[f64],
    p: Viewpoint,
    cam: &CameraModel,
    sigma_fraction: f64,
) -> f64 {
    let hw = cam.footprint_half_width(p.z);
    let sigma = sigma_fraction * hw;
    let wx = axis_weights(map.origin()[0], map.cell_size(), map.j_cells(), p.x, hw, sigma);
    let wy = axis_weights(map.origin()[1], map.cell_size(), map.k_cells(), p.y, hw, sigma);
    match (wx, wy) {
        (Some(wx), Some(wy)) => gain_for_windows(map, h_norm, &wx, &wy),
        _ => 0.0,
    }
}

/// Expected information gain of an observation from `p`: the
/// Gaussian-weighted mean of normalized cell entropy over the observable
/// cells, weighted from the geometric center of the observable window.
/// Returns 0 when no cell is observable.
pub fn expected_info_gain(
    map: &GridMap,
    p: Viewpoint,
    cam: &CameraModel,
    sigma_fraction: f64,
) -> f64 {
    let h_norm = normalized_entropy(map);
    info_gain_at(map, &h_norm, p, cam, sigma_fraction)
}

/// Utility of moving to a viewpoint above each cell, evaluated at height
/// `p_z`: info gain minus `gamma` times the height-scaled distance to
/// `best_xy`. Values are stored row-major (j major).
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityField {
    pub j: usize,
    pub k: usize,
    pub values: Vec<f64>,
}

impl UtilityField {
    /// Argmax cell; ties break to the lowest row-major index.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        (best / self.k, best % self.k)
    }
}

/// Evaluate the utility field over candidate viewpoints centred above every
/// cell at height `p_z`.
///
/// The per-candidate gain is arithmetically identical to
/// [`expected_info_gain`] at that candidate; row sums are cached across
/// candidates sharing a k-window.
pub fn utility_field(
    map: &GridMap,
    p_z: f64,
    best_xy: (f64, f64),
    cfg: &ControllerConfig,
    cam: &CameraModel,
) -> UtilityField {
    let h_norm = normalized_entropy(map);
    gain_field(map, &h_norm, p_z, cfg, cam, Some(best_xy))
}

fn gain_field(
    map: &GridMap,
    h_norm: &[f64],
    p_z: f64,
    cfg: &ControllerConfig,
    cam: &CameraModel,
    cost_target: Option<(f64, f64)>,
) -> UtilityField {
    let j_cells = map.j_cells();
    let k_cells = map.k_cells();
    let hw = cam.footprint_half_width(p_z);
    let sigma = cfg.gaussian_sigma_fraction * hw;
    let mut values = vec![0.0; j_cells * k_cells];

    let wx_all: Vec<Option<AxisWeights>> = (0..j_cells)
        .map(|a| {
            let (x, _) = map.cell_center(a, 0);
            axis_weights(map.origin()[0], map.cell_size(), j_cells, x, hw, sigma)
        })
        .collect();
    let wy_all: Vec<Option<AxisWeights>> = (0..k_cells)
        .map(|b| {
            let (_, y) = map.cell_center(0, b);
            axis_weights(map.origin()[1], map.cell_size(), k_cells, y, hw, sigma)
        })
        .collect();

    // Row transforms per candidate k-window: t[j] = sum_k wy[k] * h[j,k].
    // Reused across every candidate j-index, keeping the summation order
    // identical to the single-viewpoint evaluation.
    let mut t = vec![0.0; j_cells];
    for (b, wy) in wy_all.iter().enumerate() {
        let Some(wy) = wy else { continue };
        for (j, tj) in t.iter_mut().enumerate() {
            let row = &h_norm[j * k_cells + wy.lo..=j * k_cells + wy.hi];
            let mut row_sum = 0.0;
            for (w, h) in wy.weights.iter().zip(row) {
                row_sum += w * h;
            }
            *tj = row_sum;
        }
        for (a, wx) in wx_all.iter().enumerate() {
            let Some(wx) = wx else { continue };
            let mut total = 0.0;
            for j in wx.lo..=wx.hi {
                total += wx.weights[j - wx.lo] * t[j];
            }
            values[a * k_cells + b] = total / (wx.sum * wy.sum);
        }
    }

    if let Some(best_xy) = cost_target {
        if cfg.gamma != 0.0 {
            for a in 0..j_cells {
                for b in 0..k_cells {
                    let (x, y) = map.cell_center(a, b);
                    let c = cost(Viewpoint { x, y, z: p_z }, best_xy, cfg);
                    values[a * k_cells + b] -= cfg.gamma * c;
                }
            }
        }
    }

    UtilityField {
        j: j_cells,
        k: k_cells,
        values,
    }
}

/// Straight descent at full speed.
pub fn straight_descent(cfg: &ControllerConfig) -> VelocityCommand {
    VelocityCommand {
        vx: 0.0,
        vy: 0.0,
        vz: -cfg.speed,
    }
}

/// Constant-speed command toward a horizontal target: proportional
/// horizontal speed capped at `lambda * speed`, vertical component chosen to
/// keep the norm at `speed`. Within half a cell of the target, descend
/// straight down.
pub fn steer(
    p: Viewpoint,
    target_xy: (f64, f64),
    cfg: &ControllerConfig,
    cell_size: f64,
) -> VelocityCommand {
    let dx = target_xy.0 - p.x;
    let dy = target_xy.1 - p.y;
    let dist = (dx * dx + dy * dy).sqrt();
    if dist < cell_size / 2.0 {
        return straight_descent(cfg);
    }
    let h = (cfg.proportional_gain * dist).min(cfg.horizontal_fraction_cap * cfg.speed);
    let vz = -(cfg.speed * cfg.speed - h * h).sqrt();
    VelocityCommand {
        vx: dx / dist * h,
        vy: dy / dist * h,
        vz,
    }
}

/// Information-gain steering: move toward the center of the argmax-utility
/// cell at the current height. An unobserved map descends straight down.
pub fn mvp_velocity(
    map: &GridMap,
    p: Viewpoint,
    cfg: &ControllerConfig,
    cam: &CameraModel,
) -> VelocityCommand {
    let Some((_, best)) = map.best_cell() else {
        return straight_descent(cfg);
    };
    let field = utility_field(map, p.z, (best.cx, best.cy), cfg, cam);
    let (a, b) = field.argmax();
    steer(p, map.cell_center(a, b), cfg, map.cell_size())
}

/// Baseline: always steer toward the best-grasp cell, no utility field.
pub fn no_exploration_velocity(
    map: &GridMap,
    p: Viewpoint,
    cfg: &ControllerConfig,
) -> VelocityCommand {
    let Some((_, best)) = map.best_cell() else {
        return straight_descent(cfg);
    };
    steer(p, (best.cx, best.cy), cfg, map.cell_size())
}

/// Waypoint `i` of the fixed spiral: radius shrinks linearly from
/// `spiral_r0` to 0 around `center` while height drops from `z_max` to
/// `z_min`, with a constant angle step per waypoint.
pub fn spiral_waypoint(
    i: u32,
    n_views: u32,
    center: (f64, f64),
    cfg: &ControllerConfig,
) -> Viewpoint {
    assert!(n_views >= 2, "spiral needs at least two waypoints");
    let frac = i as f64 / (n_views - 1) as f64;
    let r = cfg.spiral_r0 * (1.0 - frac);
    let theta = i as f64 * cfg.spiral_dtheta;
    Viewpoint {
        x: center.0 + r * theta.cos(),
        y: center.1 + r * theta.sin(),
        z: cfg.z_max - (cfg.z_max - cfg.z_min) * frac,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grasp_map::{GraspObservation, MapConfig};

    fn vp(x: f64, y: f64, z: f64) -> Viewpoint {
        Viewpoint { x, y, z }
    }

    fn small_map(n: usize) -> GridMap {
        GridMap::new(&MapConfig {
            j: n,
            k: n,
            cell_size: 0.005,
            origin: [0.0, 0.0],
            ..MapConfig::default()
        })
        .unwrap()
    }

    fn fill_cell(map: &mut GridMap, j: usize, k: usize, q: f64, n: usize) {
        let (x, y) = map.cell_center(j, k);
        for _ in 0..n {
            map.insert(&GraspObservation {
                x,
                y,
                q,
                phi: 0.5,
                w: 0.03,
            });
        }
    }

    /// Uniform spread over all quality bins: maximum entropy.
    fn fill_cell_uniform(map: &mut GridMap, j: usize, k: usize) {
        let (x, y) = map.cell_center(j, k);
        for b in 0..map.quality_bins() {
            map.insert(&GraspObservation {
                x,
                y,
                q: (b as f64 + 0.5) / map.quality_bins() as f64,
                phi: 0.5,
                w: 0.03,
            });
        }
    }

    fn flat_map(n: usize) -> GridMap {
        let mut map = small_map(n);
        for j in 0..n {
            for k in 0..n {
                fill_cell(&mut map, j, k, 0.15, 3);
            }
        }
        map
    }

    #[test]
    fn cost_endpoints_and_midpoint() {
        let cfg = ControllerConfig::default();
        let best = (0.1, 0.1);
        assert_eq!(cost(vp(0.2, 0.1, cfg.z_max), best, &cfg), 0.0);
        let c = cost(vp(0.2, 0.1, cfg.z_min), best, &cfg);
        assert!((c - 0.1).abs() < 1e-12);
        let mid = cost(vp(0.2, 0.1, 0.35), best, &cfg);
        assert!((mid - 0.05).abs() < 1e-12);
    }

    #[test]
    fn zero_entropy_map_has_zero_gain() {
        let map = flat_map(12);
        let cam = CameraModel::default();
        for p in [vp(0.03, 0.03, 0.3), vp(0.01, 0.05, 0.1), vp(0.05, 0.02, 0.5)] {
            assert_eq!(expected_info_gain(&map, p, &cam, 0.5), 0.0);
        }
    }

    #[test]
    fn gain_peaks_above_single_high_entropy_cell() {
        let mut map = flat_map(21);
        fill_cell_uniform(&mut map, 10, 10);
        let cam = CameraModel::default();
        let z = 0.05; // footprint half-width ~5.8 cells
        let mut best = (0, 0);
        let mut best_gain = f64::MIN;
        for a in 0..21 {
            for b in 0..21 {
                let (x, y) = map.cell_center(a, b);
                let g = expected_info_gain(&map, vp(x, y, z), &cam, 0.5);
                if g > best_gain {
                    best_gain = g;
                    best = (a, b);
                }
            }
        }
        assert_eq!(best, (10, 10));
    }

    #[test]
    fn uniform_entropy_map_gain_is_footprint_invariant() {
        // Weights are normalized over the observable window, so a uniform
        // field scores the same from any height.
        let mut map = small_map(15);
        for j in 0..15 {
            for k in 0..15 {
                fill_cell_uniform(&mut map, j, k);
            }
        }
        let cam = CameraModel::default();
        let p_center = map.cell_center(7, 7);
        let gains: Vec<f64> = [0.05, 0.1, 0.2, 0.4]
            .iter()
            .map(|&z| expected_info_gain(&map, vp(p_center.0, p_center.1, z), &cam, 0.5))
            .collect();
        for g in &gains {
            assert!((g - gains[0]).abs() < 1e-12);
        }
        assert!((gains[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn off_map_viewpoint_has_zero_gain() {
        let map = flat_map(8);
        let cam = CameraModel::default();
        assert_eq!(expected_info_gain(&map, vp(9.0, 9.0, 0.05), &cam, 0.5), 0.0);
    }

    #[test]
    fn utility_gamma_zero_equals_info_gain_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut map = small_map(14);
        for _ in 0..300 {
            let j = rng.random_range(0..14);
            let k = rng.random_range(0..14);
            fill_cell(&mut map, j, k, rng.random(), 1);
        }
        let cfg = ControllerConfig {
            gamma: 0.0,
            ..ControllerConfig::default()
        };
        let cam = CameraModel::default();
        for &z in &[0.06, 0.21, 0.5] {
            let field = utility_field(&map, z, (0.01, 0.01), &cfg, &cam);
            for a in 0..14 {
                for b in 0..14 {
                    let (x, y) = map.cell_center(a, b);
                    let gain = expected_info_gain(&map, vp(x, y, z), &cam, 0.5);
                    assert_eq!(field.values[a * 14 + b], gain, "mismatch at ({a},{b}) z={z}");
                }
            }
        }
    }

    #[test]
    fn entropy_scaling_preserves_gamma_zero_argmax() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut map = small_map(12);
        for _ in 0..200 {
            let j = rng.random_range(0..12);
            let k = rng.random_range(0..12);
            fill_cell(&mut map, j, k, rng.random(), 1);
        }
        let cfg = ControllerConfig::default();
        let cam = CameraModel::default();
        let h: Vec<f64> = map.entropy_values();
        let base = gain_field(&map, &h, 0.1, &cfg, &cam, None);
        let scaled_h: Vec<f64> = h.iter().map(|v| v * 3.7).collect();
        let scaled = gain_field(&map, &scaled_h, 0.1, &cfg, &cam, None);
        assert_eq!(base.argmax(), scaled.argmax());
    }

    #[test]
    fn large_gamma_near_bottom_converges_to_best_cell() {
        let mut map = flat_map(20);
        fill_cell_uniform(&mut map, 2, 17); // entropy bump away from best
        fill_cell(&mut map, 14, 5, 0.95, 5); // best grasp
        let best = map.best_cell().unwrap();
        assert_eq!(best.0, (14, 5));
        let cfg = ControllerConfig {
            gamma: 1e6,
            ..ControllerConfig::default()
        };
        let cam = CameraModel::default();
        let field = utility_field(
            &map,
            cfg.z_min + 0.01,
            (best.1.cx, best.1.cy),
            &cfg,
            &cam,
        );
        assert_eq!(field.argmax(), (14, 5));
    }

    #[test]
    fn zero_entropy_map_steers_to_best_cell() {
        let mut map = flat_map(20);
        fill_cell(&mut map, 14, 5, 0.95, 5);
        let best = map.best_cell().unwrap();
        let cfg = ControllerConfig {
            gamma: 0.3,
            ..ControllerConfig::default()
        };
        let cam = CameraModel::default();
        let field = utility_field(&map, 0.3, (best.1.cx, best.1.cy), &cfg, &cam);
        assert_eq!(field.argmax(), (14, 5));

        // And the velocity matches the no-exploration command.
        let p = vp(0.02, 0.02, 0.3);
        let mvp = mvp_velocity(&map, p, &cfg, &cam);
        let noexp = no_exploration_velocity(&map, p, &cfg);
        assert!((mvp.vx - noexp.vx).abs() < 1e-12);
        assert!((mvp.vy - noexp.vy).abs() < 1e-12);
        assert!((mvp.vz - noexp.vz).abs() < 1e-12);
    }

    #[test]
    fn velocity_above_target_descends_straight() {
        let mut map = flat_map(10);
        fill_cell(&mut map, 5, 5, 0.95, 5);
        let cfg = ControllerConfig {
            gamma: 10.0,
            ..ControllerConfig::default()
        };
        let (x, y) = map.cell_center(5, 5);
        let v = no_exploration_velocity(&map, vp(x, y, 0.25), &cfg);
        assert_eq!((v.vx, v.vy), (0.0, 0.0));
        assert_eq!(v.vz, -cfg.speed);
        let v = mvp_velocity(&map, vp(x, y, 0.21), &cfg, &CameraModel::default());
        assert!(v.vz < 0.0);
        assert!((v.norm() - cfg.speed).abs() < 1e-9);
    }

    #[test]
    fn capped_horizontal_speed_splits_as_expected() {
        let cfg = ControllerConfig::default();
        let v = steer(vp(0.0, 0.0, 0.4), (0.2, 0.0), &cfg, 0.005);
        let h = (v.vx * v.vx + v.vy * v.vy).sqrt();
        assert!((h - 0.09).abs() < 1e-12);
        assert!((v.vz + (0.1f64 * 0.1 - 0.09 * 0.09).sqrt()).abs() < 1e-12);
        assert!((v.vz + 0.043588989).abs() < 1e-9);
        assert!((v.norm() - cfg.speed).abs() < 1e-9);
    }

    #[test]
    fn empty_map_descends_straight() {
        let map = small_map(8);
        let cfg = ControllerConfig::default();
        let v = mvp_velocity(&map, vp(0.02, 0.02, 0.5), &cfg, &CameraModel::default());
        assert_eq!((v.vx, v.vy, v.vz), (0.0, 0.0, -cfg.speed));
    }

    #[test]
    fn spiral_waypoints() {
        let cfg = ControllerConfig::default();
        let center = (0.15, 0.15);
        let first = spiral_waypoint(0, 50, center, &cfg);
        assert!((first.x - (0.15 + 0.12)).abs() < 1e-12);
        assert!((first.y - 0.15).abs() < 1e-12);
        assert_eq!(first.z, cfg.z_max);
        let last = spiral_waypoint(49, 50, center, &cfg);
        assert!((last.x - 0.15).abs() < 1e-12);
        assert!((last.y - 0.15).abs() < 1e-12);
        assert!((last.z - cfg.z_min).abs() < 1e-12);
        // Uniform parameter spacing: radius and height drop linearly.
        for i in 0..49u32 {
            let a = spiral_waypoint(i, 50, center, &cfg);
            let b = spiral_waypoint(i + 1, 50, center, &cfg);
            assert!((a.z - b.z - (cfg.z_max - cfg.z_min) / 49.0).abs() < 1e-12);
        }
    }

    #[test]
    fn policy_names_round_trip() {
        for name in ["mvp", "single-view", "fixed-25", "fixed-50", "no-exploration"] {
            let p: Policy = name.parse().unwrap();
            assert_eq!(p.name(), name);
        }
        assert!("fixed-1".parse::<Policy>().is_err());
        assert!("bogus".parse::<Policy>().is_err());
    }
}
