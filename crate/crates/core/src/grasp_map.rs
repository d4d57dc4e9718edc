//! Discretized workspace grid that accumulates grasp observations per cell.
//!
//! Each cell keeps count histograms of observed grasp quality and of joint
//! (angle, quality), plus a running width sum. Mean-grasp queries and the
//! per-cell quality entropy are answered from those histograms.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A single grasp observation in world coordinates.
///
/// `q` lies in [0,1], `phi` in [0,π], `w` is a gripper width in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraspObservation {
    pub x: f64,
    pub y: f64,
    pub q: f64,
    pub phi: f64,
    pub w: f64,
}

/// Mean grasp for a cell: cell-center position plus mean angle, width and
/// quality of the observations accumulated there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraspEstimate {
    pub cx: f64,
    pub cy: f64,
    pub phi_bar: f64,
    pub w_bar: f64,
    pub q_bar: f64,
}

/// Circular mean of a cell's angle observations.
///
/// `degenerate` is set when the weighted vector sum has no usable direction
/// (resultant numerically zero); `radians` is 0 by convention in that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanAngle {
    pub radians: f64,
    pub degenerate: bool,
}

/// Per-cell observation histograms.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    /// Quality counts, `q_hist[b]` is the count for 1-based bin `b + 1`.
    q_hist: Vec<u32>,
    /// Joint (angle, quality) counts, row-major `angle_bins x quality_bins`.
    m_hist: Vec<u32>,
    w_sum: f64,
    n_obs: u32,
}

impl CellStats {
    fn new(quality_bins: usize, angle_bins: usize) -> Self {
        CellStats {
            q_hist: vec![0; quality_bins],
            m_hist: vec![0; quality_bins * angle_bins],
            w_sum: 0.0,
            n_obs: 0,
        }
    }

    pub fn n_obs(&self) -> u32 {
        self.n_obs
    }

    pub fn is_empty(&self) -> bool {
        self.n_obs == 0
    }

    pub fn quality_hist(&self) -> &[u32] {
        &self.q_hist
    }

    pub fn joint_hist(&self) -> &[u32] {
        &self.m_hist
    }

    pub fn quality_bins(&self) -> usize {
        self.q_hist.len()
    }

    pub fn angle_bins(&self) -> usize {
        self.m_hist.len() / self.q_hist.len()
    }

    fn insert(&mut self, q: f64, phi: f64, w: f64) {
        let nq = self.quality_bins();
        let bq = quality_bin(q, nq);
        let bphi = angle_bin(phi, self.angle_bins());
        self.q_hist[bq] += 1;
        self.m_hist[bphi * nq + bq] += 1;
        self.w_sum += w;
        self.n_obs += 1;
    }

    fn clear(&mut self) {
        self.q_hist.fill(0);
        self.m_hist.fill(0);
        self.w_sum = 0.0;
        self.n_obs = 0;
    }

    /// Mean quality: the count-weighted mean of bin values `n_q / N_q`.
    /// `None` for an empty cell.
    pub fn mean_quality(&self) -> Option<f64> {
        if self.n_obs == 0 {
            return None;
        }
        let nq = self.quality_bins() as f64;
        let mut weighted = 0.0;
        let mut total = 0.0;
        for (b, &c) in self.q_hist.iter().enumerate() {
            weighted += (b as f64 + 1.0) / nq * c as f64;
            total += c as f64;
        }
        Some(weighted / total)
    }

    /// Quality-weighted vector mean of the binned angle observations,
    /// mapped into [0, π]. `None` for an empty cell.
    pub fn mean_angle(&self) -> Option<MeanAngle> {
        if self.n_obs == 0 {
            return None;
        }
        let nq = self.quality_bins();
        let nphi = self.angle_bins();
        let mut sin_sum = 0.0;
        let mut cos_sum = 0.0;
        let mut weight_sum = 0.0;
        for bphi in 0..nphi {
            let theta = (bphi as f64 + 1.0) / nphi as f64 * PI;
            let (s, c) = theta.sin_cos();
            for bq in 0..nq {
                let count = self.m_hist[bphi * nq + bq] as f64;
                if count == 0.0 {
                    continue;
                }
                let weight = (bq as f64 + 1.0) / nq as f64 * count;
                sin_sum += s * weight;
                cos_sum += c * weight;
                weight_sum += weight;
            }
        }
        if sin_sum.hypot(cos_sum) <= 1e-12 * weight_sum {
            return Some(MeanAngle {
                radians: 0.0,
                degenerate: true,
            });
        }
        let mut angle = sin_sum.atan2(cos_sum);
        if angle < 0.0 {
            angle += PI;
        }
        Some(MeanAngle {
            radians: angle,
            degenerate: false,
        })
    }

    /// Arithmetic mean of observed widths. `None` for an empty cell.
    pub fn mean_width(&self) -> Option<f64> {
        if self.n_obs == 0 {
            None
        } else {
            Some(self.w_sum / self.n_obs as f64)
        }
    }

    /// Shannon entropy (nats) of the quality histogram, with 0·ln 0 = 0.
    /// An empty cell reports the maximum-uncertainty prior ln N_q.
    pub fn entropy(&self) -> f64 {
        if self.n_obs == 0 {
            return (self.quality_bins() as f64).ln();
        }
        let total = self.n_obs as f64;
        let mut h = 0.0;
        for &c in &self.q_hist {
            if c > 0 {
                let p = c as f64 / total;
                h -= p * p.ln();
            }
        }
        h
    }
}

/// Quality bin index (0-based) for `q` in [0,1]: 1-based bin
/// `max(1, ceil(q·N_q))`, so q = 0 lands in the lowest bin.
pub fn quality_bin(q: f64, quality_bins: usize) -> usize {
    let raw = (q * quality_bins as f64).ceil() as i64;
    (raw.clamp(1, quality_bins as i64) - 1) as usize
}

/// Angle bin index (0-based) for `phi` in [0,π]: 1-based bin
/// `max(1, ceil(phi·N_φ/π))`; phi = π maps to the top bin.
pub fn angle_bin(phi: f64, angle_bins: usize) -> usize {
    let raw = (phi * angle_bins as f64 / PI).ceil() as i64;
    (raw.clamp(1, angle_bins as i64) - 1) as usize
}

/// Grid map shape and binning parameters.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct MapConfig {
    pub j: usize,
    pub k: usize,
    pub cell_size: f64,
    pub origin: [f64; 2],
    pub quality_bins: usize,
    pub angle_bins: usize,
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig {
            j: 68,
            k: 68,
            cell_size: 0.005,
            origin: [-0.02, -0.02],
            quality_bins: 10,
            angle_bins: 18,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapError {
    InvalidConfig(String),
}

impl std::fmt::Display for MapError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapError::InvalidConfig(msg) => write!(f, "invalid map config: {msg}"),
        }
    }
}

impl std::error::Error for MapError {}

/// J×K lattice of [`CellStats`] with a world ↔ cell transform.
///
/// Index convention: `(j, k)` with `j` along x and `k` along y; storage is
/// row-major with `j` as the major axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    j: usize,
    k: usize,
    cell_size: f64,
    origin: [f64; 2],
    quality_bins: usize,
    angle_bins: usize,
    cells: Vec<CellStats>,
    observed: u32,
}

impl GridMap {
    pub fn new(cfg: &MapConfig) -> Result<Self, MapError> {
        if cfg.j < 1 || cfg.k < 1 {
            return Err(MapError::InvalidConfig(format!(
                "cell counts must be >= 1, got {}x{}",
                cfg.j, cfg.k
            )));
        }
        if !(cfg.cell_size > 0.0) {
            return Err(MapError::InvalidConfig(format!(
                "cell_size must be > 0, got {}",
                cfg.cell_size
            )));
        }
        if cfg.quality_bins < 1 || cfg.angle_bins < 1 {
            return Err(MapError::InvalidConfig(format!(
                "bin counts must be >= 1, got N_q={} N_phi={}",
                cfg.quality_bins, cfg.angle_bins
            )));
        }
        Ok(GridMap {
            j: cfg.j,
            k: cfg.k,
            cell_size: cfg.cell_size,
            origin: cfg.origin,
            quality_bins: cfg.quality_bins,
            angle_bins: cfg.angle_bins,
            cells: vec![CellStats::new(cfg.quality_bins, cfg.angle_bins); cfg.j * cfg.k],
            observed: 0,
        })
    }

    pub fn j_cells(&self) -> usize {
        self.j
    }

    pub fn k_cells(&self) -> usize {
        self.k
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn origin(&self) -> [f64; 2] {
        self.origin
    }

    pub fn quality_bins(&self) -> usize {
        self.quality_bins
    }

    pub fn angle_bins(&self) -> usize {
        self.angle_bins
    }

    /// True when no cell has received any observation.
    pub fn is_empty(&self) -> bool {
        self.observed == 0
    }

    /// Entropy of a never-observed cell (ln N_q).
    pub fn entropy_prior(&self) -> f64 {
        (self.quality_bins as f64).ln()
    }

    /// Cell index for a world point, half-open on the upper boundary.
    pub fn world_to_cell(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let fj = ((x - self.origin[0]) / self.cell_size).floor();
        let fk = ((y - self.origin[1]) / self.cell_size).floor();
        if fj < 0.0 || fk < 0.0 || fj >= self.j as f64 || fk >= self.k as f64 {
            return None;
        }
        Some((fj as usize, fk as usize))
    }

    /// World coordinates of the center of cell `(j, k)`.
    pub fn cell_center(&self, j: usize, k: usize) -> (f64, f64) {
        (
            self.origin[0] + (j as f64 + 0.5) * self.cell_size,
            self.origin[1] + (k as f64 + 0.5) * self.cell_size,
        )
    }

    pub fn cell(&self, j: usize, k: usize) -> &CellStats {
        &self.cells[j * self.k + k]
    }

    /// Accumulate one observation; points outside the map are dropped.
    pub fn insert(&mut self, obs: &GraspObservation) {
        if let Some((j, k)) = self.world_to_cell(obs.x, obs.y) {
            self.cells[j * self.k + k].insert(obs.q, obs.phi, obs.w);
            self.observed += 1;
        }
    }

    /// Cell with the highest mean quality and its mean-grasp estimate.
    /// Ties break to the lowest `(j, k)` in row-major order; `None` when the
    /// whole map is unobserved.
    pub fn best_cell(&self) -> Option<((usize, usize), GraspEstimate)> {
        let mut best: Option<(usize, f64)> = None;
        for (idx, cell) in self.cells.iter().enumerate() {
            if let Some(q_bar) = cell.mean_quality() {
                match best {
                    Some((_, q)) if q_bar <= q => {}
                    _ => best = Some((idx, q_bar)),
                }
            }
        }
        let (idx, q_bar) = best?;
        let (j, k) = (idx / self.k, idx % self.k);
        let cell = &self.cells[idx];
        let (cx, cy) = self.cell_center(j, k);
        Some((
            (j, k),
            GraspEstimate {
                cx,
                cy,
                phi_bar: cell.mean_angle().map(|a| a.radians).unwrap_or(0.0),
                w_bar: cell.mean_width().unwrap_or(0.0),
                q_bar,
            },
        ))
    }

    /// Return all cells to the empty state.
    pub fn reset(&mut self) {
        for cell in &mut self.cells {
            cell.clear();
        }
        self.observed = 0;
    }

    /// Per-cell entropy in row-major order (j major).
    pub fn entropy_values(&self) -> Vec<f64> {
        self.cells.iter().map(|c| c.entropy()).collect()
    }

    /// Snapshot of the non-empty cells for export.
    pub fn snapshot(&self) -> MapSnapshot {
        let mut cells = Vec::new();
        for j in 0..self.j {
            for k in 0..self.k {
                let cell = self.cell(j, k);
                if !cell.is_empty() {
                    cells.push(CellSnapshot {
                        j,
                        k,
                        q_hist: cell.q_hist.clone(),
                        m_hist: cell.m_hist.clone(),
                        w_sum: cell.w_sum,
                        n_obs: cell.n_obs,
                    });
                }
            }
        }
        MapSnapshot {
            j: self.j,
            k: self.k,
            cell_size: self.cell_size,
            origin: self.origin,
            cells,
        }
    }
}

/// JSON-exportable map state; only non-empty cells are listed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MapSnapshot {
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub cell_size: f64,
    pub origin: [f64; 2],
    pub cells: Vec<CellSnapshot>,
}

/// One non-empty cell in a [`MapSnapshot`]; `m_hist` is row-major
/// `angle_bins x quality_bins`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CellSnapshot {
    pub j: usize,
    pub k: usize,
    pub q_hist: Vec<u32>,
    pub m_hist: Vec<u32>,
    pub w_sum: f64,
    pub n_obs: u32,
}
