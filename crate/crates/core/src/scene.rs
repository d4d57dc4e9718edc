//! Synthetic scene and observation oracle.
//!
//! Objects are vertical cylinders (disk footprint x height) carrying
//! ground-truth grasp sites. Observations are produced per grid cell with
//! viewpoint-dependent occlusion: rays from the camera to a cell that pass
//! through another object's cylinder yield corrupted, high-variance quality
//! draws, which is what keeps entropy high around clutter.

use crate::controller::Viewpoint;
use crate::grasp_map::{GraspEstimate, GraspObservation, GridMap};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Axis-aligned workspace bounds in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Workspace {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace {
            x_min: 0.0,
            y_min: 0.0,
            x_max: 0.30,
            y_max: 0.30,
        }
    }
}

impl Workspace {
    pub fn center(&self) -> (f64, f64) {
        (
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

/// Ground-truth antipodal grasp attached to an object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraspSite {
    pub x: f64,
    pub y: f64,
    pub phi_true: f64,
    pub w_true: f64,
    pub q_true: f64,
}

/// Cylinder-footprint object with its grasp sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneObject {
    pub cx: f64,
    pub cy: f64,
    pub radius: f64,
    pub height: f64,
    pub removed: bool,
    pub sites: Vec<GraspSite>,
}

impl SceneObject {
    pub fn footprint_contains(&self, x: f64, y: f64) -> bool {
        let dx = x - self.cx;
        let dy = y - self.cy;
        dx * dx + dy * dy <= self.radius * self.radius
    }
}

/// Procedurally generated clutter plus the workspace it sits in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub workspace: Workspace,
    pub seed: u64,
    pub objects: Vec<SceneObject>,
}

impl Scene {
    pub fn remaining_objects(&self) -> usize {
        self.objects.iter().filter(|o| !o.removed).count()
    }

    pub fn max_object_height(&self) -> f64 {
        self.objects
            .iter()
            .filter(|o| !o.removed)
            .map(|o| o.height)
            .fold(0.0, f64::max)
    }
}

/// Scene generation ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneParams {
    pub workspace: Workspace,
    /// Footprint radius range in metres.
    pub radius_range: [f64; 2],
    /// Object height range in metres.
    pub height_range: [f64; 2],
    /// Ground-truth grasp quality range.
    pub quality_range: [f64; 2],
    /// Ground-truth grasp angle range, radians. Kept away from the 0/pi
    /// wrap boundary, where the circular mean over [0, pi] is known to
    /// degenerate under noise.
    pub angle_range: [f64; 2],
    /// Ground-truth gripper width range in metres.
    pub width_range: [f64; 2],
    /// Grasp sites per object (inclusive).
    pub sites_per_object: [u32; 2],
    /// Maximum allowed pairwise footprint overlap fraction,
    /// `(r1 + r2 - d) / (r1 + r2)`.
    pub max_overlap: f64,
    /// Placement retries per object before generation fails.
    pub max_place_attempts: u32,
}

impl Default for SceneParams {
    fn default() -> Self {
        SceneParams {
            workspace: Workspace::default(),
            radius_range: [0.015, 0.040],
            height_range: [0.020, 0.080],
            quality_range: [0.4, 1.0],
            angle_range: [0.25, std::f64::consts::PI - 0.25],
            width_range: [0.02, 0.08],
            sites_per_object: [1, 4],
            max_overlap: 0.4,
            max_place_attempts: 500,
        }
    }
}

/// Observation-model parameters of the simulated eye-in-hand camera.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CameraModel {
    /// Half-angle of the square footprint, radians.
    pub fov_half_angle: f64,
    pub noise_sigma_q: f64,
    pub noise_sigma_phi: f64,
    pub noise_sigma_w: f64,
    /// Quality law for occluded cells (uniform range).
    pub occluded_q_range: [f64; 2],
    /// Quality law for unoccluded background cells (uniform range).
    pub background_q_range: [f64; 2],
    /// Width law for occluded/background cells (uniform range), metres.
    pub random_width_range: [f64; 2],
    /// A cell is treated as observing a site when the site lies in the cell
    /// or within this radius of the cell center, metres.
    pub site_influence_radius: f64,
}

impl Default for CameraModel {
    fn default() -> Self {
        CameraModel {
            fov_half_angle: PI / 6.0,
            noise_sigma_q: 0.05,
            noise_sigma_phi: 0.1,
            noise_sigma_w: 0.005,
            occluded_q_range: [0.0, 1.0],
            background_q_range: [0.0, 0.2],
            random_width_range: [0.0, 0.10],
            site_influence_radius: 0.005,
        }
    }
}

impl CameraModel {
    /// Half-width of the square ground footprint at camera height `z`.
    pub fn footprint_half_width(&self, z: f64) -> f64 {
        z * self.fov_half_angle.tan()
    }
}

/// Matching tolerances for grasp adjudication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GraspTolerances {
    /// Position tolerance, metres.
    pub pos: f64,
    /// Angle tolerance, radians (pi-periodic distance).
    pub angle: f64,
    /// Width tolerance, metres.
    pub width: f64,
}

impl Default for GraspTolerances {
    fn default() -> Self {
        GraspTolerances {
            pos: 0.010,
            angle: 0.3,
            width: 0.020,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SceneError {
    PlacementFailed { placed: usize, attempts: u32 },
}

impl std::fmt::Display for SceneError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SceneError::PlacementFailed { placed, attempts } => write!(
                f,
                "object placement failed after {attempts} attempts ({placed} objects placed)"
            ),
        }
    }
}

impl std::error::Error for SceneError {}

/// Generate a cluttered scene. Identical inputs give a bit-identical scene.
pub fn generate_scene(
    n_objects: u32,
    seed: u64,
    params: &SceneParams,
) -> Result<Scene, SceneError> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ws = params.workspace;
    let mut objects: Vec<SceneObject> = Vec::with_capacity(n_objects as usize);
    for _ in 0..n_objects {
        let mut placed = false;
        for _ in 0..params.max_place_attempts {
            let cx = rng.random_range(ws.x_min..=ws.x_max);
            let cy = rng.random_range(ws.y_min..=ws.y_max);
            let radius = rng.random_range(params.radius_range[0]..=params.radius_range[1]);
            let ok = objects.iter().all(|o| {
                let d = ((o.cx - cx).powi(2) + (o.cy - cy).powi(2)).sqrt();
                let overlap = ((o.radius + radius - d) / (o.radius + radius)).max(0.0);
                overlap <= params.max_overlap
            });
            if !ok {
                continue;
            }
            let height = rng.random_range(params.height_range[0]..=params.height_range[1]);
            let n_sites =
                rng.random_range(params.sites_per_object[0]..=params.sites_per_object[1]);
            let mut sites = Vec::with_capacity(n_sites as usize);
            for _ in 0..n_sites {
                // Uniform over a disk slightly inside the footprint.
                let rr = radius * 0.95 * rng.random::<f64>().sqrt();
                let theta = rng.random_range(0.0..2.0 * PI);
                sites.push(GraspSite {
                    x: cx + rr * theta.cos(),
                    y: cy + rr * theta.sin(),
                    phi_true: rng.random_range(params.angle_range[0]..=params.angle_range[1]),
                    w_true: rng.random_range(params.width_range[0]..=params.width_range[1]),
                    q_true: rng.random_range(params.quality_range[0]..=params.quality_range[1]),
                });
            }
            objects.push(SceneObject {
                cx,
                cy,
                radius,
                height,
                removed: false,
                sites,
            });
            placed = true;
            break;
        }
        if !placed {
            return Err(SceneError::PlacementFailed {
                placed: objects.len(),
                attempts: params.max_place_attempts,
            });
        }
    }
    Ok(Scene {
        workspace: ws,
        seed,
        objects,
    })
}

/// Inclusive cell-index window `[lo, hi]` along one axis for cell centers
/// within `[center - hw, center + hw]`, clipped to the map.
pub(crate) fn axis_window(
    origin: f64,
    cell_size: f64,
    count: usize,
    center: f64,
    hw: f64,
) -> Option<(usize, usize)> {
    let lo = ((center - hw - origin) / cell_size - 0.5).ceil();
    let hi = ((center + hw - origin) / cell_size - 0.5).floor();
    let lo = lo.max(0.0);
    let hi = hi.min(count as f64 - 1.0);
    if lo > hi {
        return None;
    }
    Some((lo as usize, hi as usize))
}

/// Rectangular window of observable cells for a viewpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellWindow {
    pub j_lo: usize,
    pub j_hi: usize,
    pub k_lo: usize,
    pub k_hi: usize,
}

/// Window of in-bounds cells whose centers fall inside the camera's square
/// footprint at viewpoint `p`; `None` when the footprint misses the map.
pub fn observable_window(map: &GridMap, p: Viewpoint, cam: &CameraModel) -> Option<CellWindow> {
    let hw = cam.footprint_half_width(p.z);
    let (j_lo, j_hi) = axis_window(map.origin()[0], map.cell_size(), map.j_cells(), p.x, hw)?;
    let (k_lo, k_hi) = axis_window(map.origin()[1], map.cell_size(), map.k_cells(), p.y, hw)?;
    Some(CellWindow {
        j_lo,
        j_hi,
        k_lo,
        k_hi,
    })
}

/// The set of cells observable from `p`, in row-major order.
pub fn observable_cells(map: &GridMap, p: Viewpoint, cam: &CameraModel) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    if let Some(w) = observable_window(map, p, cam) {
        for j in w.j_lo..=w.j_hi {
            for k in w.k_lo..=w.k_hi {
                cells.push((j, k));
            }
        }
    }
    cells
}

/// True when the 3D segment from `p` to ground point `(x, y, 0)` passes
/// through the cylinder `(center, radius, height)`.
fn segment_hits_cylinder(
    p: Viewpoint,
    x: f64,
    y: f64,
    cx: f64,
    cy: f64,
    radius: f64,
    height: f64,
) -> bool {
    // z(t) = p.z * (1 - t); inside the height band for t >= t_lo.
    let t_lo = if height >= p.z {
        0.0
    } else {
        1.0 - height / p.z
    };
    let ax = p.x - cx;
    let ay = p.y - cy;
    let bx = x - p.x;
    let by = y - p.y;
    let bb = bx * bx + by * by;
    // Closest approach of the xy-projected line to the axis, clamped to the
    // admissible parameter range; distance to a segment is convex in t.
    let t = if bb > 0.0 {
        (-(ax * bx + ay * by) / bb).clamp(t_lo, 1.0)
    } else {
        t_lo
    };
    let dx = ax + t * bx;
    let dy = ay + t * by;
    dx * dx + dy * dy <= radius * radius
}

/// Occlusion test for observing the ground point `(x, y)` from `p`.
/// Objects whose footprint contains the point are not counted as occluders,
/// nor are removed objects.
pub fn is_occluded(scene: &Scene, p: Viewpoint, x: f64, y: f64) -> bool {
    scene.objects.iter().any(|o| {
        !o.removed
            && !o.footprint_contains(x, y)
            && segment_hits_cylinder(p, x, y, o.cx, o.cy, o.radius, o.height)
    })
}

fn wrap_angle_pi(a: f64) -> f64 {
    a.rem_euclid(PI)
}

/// Pi-periodic angular distance between two grasp angles in [0, pi].
pub fn grasp_angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(PI - d)
}

/// One observation per observable cell.
///
/// Unoccluded cells at a grasp site draw from the site's ground truth with
/// Gaussian noise; unoccluded background cells draw low quality; occluded
/// cells draw from the high-variance corrupted law.
pub fn observe(
    scene: &Scene,
    p: Viewpoint,
    map: &GridMap,
    cam: &CameraModel,
    rng: &mut ChaCha8Rng,
) -> Vec<GraspObservation> {
    let window = match observable_window(map, p, cam) {
        Some(w) => w,
        None => return Vec::new(),
    };
    let noise_q = Normal::new(0.0, cam.noise_sigma_q).expect("sigma_q >= 0");
    let noise_phi = Normal::new(0.0, cam.noise_sigma_phi).expect("sigma_phi >= 0");
    let noise_w = Normal::new(0.0, cam.noise_sigma_w).expect("sigma_w >= 0");

    // Nearest live site per cell, for cells containing a site or with a
    // center within the influence radius.
    let mut site_of_cell: Vec<Option<(f64, GraspSite)>> = vec![None; map.j_cells() * map.k_cells()];
    let mut assign = |j: usize, k: usize, d2: f64, site: GraspSite| {
        let idx = j * map.k_cells() + k;
        match site_of_cell[idx] {
            Some((prev, _)) if prev <= d2 => {}
            _ => site_of_cell[idx] = Some((d2, site)),
        }
    };
    for object in scene.objects.iter().filter(|o| !o.removed) {
        for site in &object.sites {
            if let Some((j, k)) = map.world_to_cell(site.x, site.y) {
                let (cx, cy) = map.cell_center(j, k);
                let d2 = (cx - site.x).powi(2) + (cy - site.y).powi(2);
                assign(j, k, d2, *site);
            }
            let r = cam.site_influence_radius;
            let jw = axis_window(map.origin()[0], map.cell_size(), map.j_cells(), site.x, r);
            let kw = axis_window(map.origin()[1], map.cell_size(), map.k_cells(), site.y, r);
            if let (Some((j_lo, j_hi)), Some((k_lo, k_hi))) = (jw, kw) {
                for j in j_lo..=j_hi {
                    for k in k_lo..=k_hi {
                        let (cx, cy) = map.cell_center(j, k);
                        let d2 = (cx - site.x).powi(2) + (cy - site.y).powi(2);
                        if d2 <= r * r {
                            assign(j, k, d2, *site);
                        }
                    }
                }
            }
        }
    }

    let mut out = Vec::with_capacity(
        (window.j_hi - window.j_lo + 1) * (window.k_hi - window.k_lo + 1),
    );
    for j in window.j_lo..=window.j_hi {
        for k in window.k_lo..=window.k_hi {
            let (x, y) = map.cell_center(j, k);
            let obs = if is_occluded(scene, p, x, y) {
                GraspObservation {
                    x,
                    y,
                    q: rng.random_range(cam.occluded_q_range[0]..=cam.occluded_q_range[1]),
                    phi: rng.random_range(0.0..PI),
                    w: rng.random_range(cam.random_width_range[0]..=cam.random_width_range[1]),
                }
            } else if let Some((_, site)) = site_of_cell[j * map.k_cells() + k] {
                GraspObservation {
                    x,
                    y,
                    q: (site.q_true + noise_q.sample(rng)).clamp(0.0, 1.0),
                    phi: wrap_angle_pi(site.phi_true + noise_phi.sample(rng)),
                    w: (site.w_true + noise_w.sample(rng)).max(0.0),
                }
            } else {
                GraspObservation {
                    x,
                    y,
                    q: rng.random_range(cam.background_q_range[0]..=cam.background_q_range[1]),
                    phi: rng.random_range(0.0..PI),
                    w: rng.random_range(cam.random_width_range[0]..=cam.random_width_range[1]),
                }
            };
            out.push(obs);
        }
    }
    out
}

/// Execute a mean-grasp estimate against the scene.
///
/// The nearest live site matching all tolerances is attempted; success is a
/// Bernoulli draw on its ground-truth quality and removes the owning object.
pub fn execute_grasp(
    scene: &mut Scene,
    grasp: &GraspEstimate,
    tol: &GraspTolerances,
    rng: &mut ChaCha8Rng,
) -> bool {
    let mut best: Option<(f64, usize, f64)> = None; // (dist2, object index, q_true)
    for (oi, object) in scene.objects.iter().enumerate() {
        if object.removed {
            continue;
        }
        for site in &object.sites {
            let d2 = (site.x - grasp.cx).powi(2) + (site.y - grasp.cy).powi(2);
            if d2 > tol.pos * tol.pos {
                continue;
            }
            if grasp_angle_distance(grasp.phi_bar, site.phi_true) > tol.angle {
                continue;
            }
            if (grasp.w_bar - site.w_true).abs() > tol.width {
                continue;
            }
            match best {
                Some((prev, _, _)) if prev <= d2 => {}
                _ => best = Some((d2, oi, site.q_true)),
            }
        }
    }
    let Some((_, oi, q_true)) = best else {
        return false;
    };
    let success = rng.random::<f64>() < q_true;
    if success {
        scene.objects[oi].removed = true;
    }
    success
}
