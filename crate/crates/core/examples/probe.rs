// Temporary calibration probe; not part of the deliverable.
use mvp_core::controller::Policy;
use mvp_core::episode::{compute_metrics, run_episodes, SimParams};
use std::time::Instant;

fn main() {
    let params = SimParams::default();
    let args: Vec<String> = std::env::args().collect();
    let runs: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let objects: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(20);
    let seeds: Vec<u64> = (1000..1000 + runs).collect();

    let configs: Vec<(String, Policy, Option<f64>)> = vec![
        ("mvp g=0.0".into(), Policy::Mvp, Some(0.0)),
        ("mvp g=0.1".into(), Policy::Mvp, Some(0.1)),
        ("mvp g=0.2".into(), Policy::Mvp, Some(0.2)),
        ("mvp g=0.4".into(), Policy::Mvp, Some(0.4)),
        ("mvp g=0.7".into(), Policy::Mvp, Some(0.7)),
        ("single-view".into(), Policy::SingleView, None),
        ("no-exploration".into(), Policy::NoExploration, None),
        ("fixed-25".into(), Policy::FixedSpiral { n_views: 25 }, None),
        ("fixed-50".into(), Policy::FixedSpiral { n_views: 50 }, None),
    ];

    println!(
        "{:<16} {:>8} {:>8} {:>8} {:>8} {:>8} {:>9}",
        "config", "attempts", "sr", "time_s", "mpph", "views", "wall_s"
    );
    for (name, policy, gamma) in configs {
        let mut p = params.clone();
        if let Some(g) = gamma {
            p.controller.gamma = g;
        }
        let t0 = Instant::now();
        let episodes: Vec<_> = run_episodes(&seeds, objects, policy, &p, 0)
            .into_iter()
            .map(Result::unwrap)
            .collect();
        let wall = t0.elapsed().as_secs_f64();
        let attempts: Vec<_> = episodes
            .iter()
            .flat_map(|e| e.attempts.iter().cloned())
            .collect();
        let m = compute_metrics(&attempts).unwrap();
        println!(
            "{:<16} {:>8} {:>8.3} {:>8.2} {:>8.1} {:>8.1} {:>9.2}",
            name,
            m.total_attempts,
            m.success_rate,
            m.mean_time,
            m.mpph,
            m.mean_viewpoints,
            wall
        );
    }
}
