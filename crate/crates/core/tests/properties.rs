//! Property tests for the grid-map invariants.

use mvp_core::grasp_map::{GraspObservation, GridMap, MapConfig};
use proptest::prelude::*;
use std::f64::consts::PI;

fn cfg(j: usize, k: usize) -> MapConfig {
    MapConfig {
        j,
        k,
        cell_size: 0.005,
        origin: [0.0, 0.0],
        ..MapConfig::default()
    }
}

/// Observations with dyadic widths so sums are exact in any order.
fn obs_strategy() -> impl Strategy<Value = GraspObservation> {
    (0usize..6, 0usize..6, 0.0f64..=1.0, 0.0f64..=PI, 0u32..128).prop_map(
        |(j, k, q, phi, w1024)| GraspObservation {
            x: (j as f64 + 0.5) * 0.005,
            y: (k as f64 + 0.5) * 0.005,
            q,
            phi,
            w: w1024 as f64 / 1024.0,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn insertion_order_is_irrelevant(
        obs in proptest::collection::vec(obs_strategy(), 0..40),
        seed in 0u64..1000,
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut forward = GridMap::new(&cfg(6, 6)).unwrap();
        for o in &obs {
            forward.insert(o);
        }
        let mut permuted = obs.clone();
        permuted.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let mut out_of_order = GridMap::new(&cfg(6, 6)).unwrap();
        for o in &permuted {
            out_of_order.insert(o);
        }
        prop_assert_eq!(forward, out_of_order);
    }

    #[test]
    fn entropy_stays_within_bounds(
        obs in proptest::collection::vec(obs_strategy(), 0..60),
    ) {
        let mut map = GridMap::new(&cfg(6, 6)).unwrap();
        for o in &obs {
            map.insert(o);
        }
        let h_max = 10f64.ln();
        for j in 0..6 {
            for k in 0..6 {
                let h = map.cell(j, k).entropy();
                prop_assert!(h >= 0.0);
                prop_assert!(h <= h_max + 1e-12);
            }
        }
    }

    #[test]
    fn modal_bin_insertion_never_raises_entropy(
        obs in proptest::collection::vec(obs_strategy(), 1..60),
    ) {
        let mut map = GridMap::new(&cfg(6, 6)).unwrap();
        for o in &obs {
            map.insert(o);
        }
        for j in 0..6 {
            for k in 0..6 {
                let cell = map.cell(j, k);
                let before = cell.entropy();
                let modal = cell
                    .quality_hist()
                    .iter()
                    .enumerate()
                    .max_by_key(|(_, c)| **c)
                    .map(|(b, _)| b)
                    .unwrap();
                let mut probe = map.clone();
                probe.insert(&GraspObservation {
                    x: (j as f64 + 0.5) * 0.005,
                    y: (k as f64 + 0.5) * 0.005,
                    q: (modal as f64 + 0.5) / 10.0,
                    phi: 0.5,
                    w: 0.03,
                });
                prop_assert!(probe.cell(j, k).entropy() <= before + 1e-12);
            }
        }
    }

    #[test]
    fn count_scaling_preserves_means_and_argmax(
        obs in proptest::collection::vec(obs_strategy(), 1..40),
        factor in prop_oneof![Just(2usize), Just(4), Just(8)],
    ) {
        let mut base = GridMap::new(&cfg(6, 6)).unwrap();
        let mut scaled = GridMap::new(&cfg(6, 6)).unwrap();
        for o in &obs {
            base.insert(o);
            for _ in 0..factor {
                scaled.insert(o);
            }
        }
        let (base_cell, base_est) = base.best_cell().unwrap();
        let (scaled_cell, scaled_est) = scaled.best_cell().unwrap();
        prop_assert_eq!(base_cell, scaled_cell);
        prop_assert_eq!(base_est.q_bar, scaled_est.q_bar);
    }

    #[test]
    fn cell_center_round_trips(
        j_cells in 1usize..40,
        k_cells in 1usize..40,
        cell_size in 1e-3f64..0.1,
        ox in -1.0f64..1.0,
        oy in -1.0f64..1.0,
    ) {
        let map = GridMap::new(&MapConfig {
            j: j_cells,
            k: k_cells,
            cell_size,
            origin: [ox, oy],
            ..MapConfig::default()
        })
        .unwrap();
        for j in [0, j_cells / 2, j_cells - 1] {
            for k in [0, k_cells / 2, k_cells - 1] {
                let (x, y) = map.cell_center(j, k);
                prop_assert_eq!(map.world_to_cell(x, y), Some((j, k)));
            }
        }
    }
}
