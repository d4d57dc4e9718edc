// Temporary episode-dynamics probe; not part of the deliverable.
use mvp_core::controller::Policy;
use mvp_core::episode::{run_attempt, SimParams};
use mvp_core::grasp_map::GridMap;
use mvp_core::scene::{generate_scene, grasp_angle_distance, Scene};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn classify(
    scene: &Scene,
    grasp: &mvp_core::grasp_map::GraspEstimate,
    tol: &mvp_core::scene::GraspTolerances,
) -> &'static str {
    let mut nearest: Option<f64> = None;
    let mut pos_ok = false;
    let mut pos_phi_ok = false;
    let mut all_ok = false;
    for o in scene.objects.iter().filter(|o| !o.removed) {
        for s in &o.sites {
            let d = ((s.x - grasp.cx).powi(2) + (s.y - grasp.cy).powi(2)).sqrt();
            nearest = Some(nearest.map_or(d, |n: f64| n.min(d)));
            if d <= tol.pos {
                pos_ok = true;
                if grasp_angle_distance(grasp.phi_bar, s.phi_true) <= tol.angle {
                    pos_phi_ok = true;
                    if (grasp.w_bar - s.w_true).abs() <= tol.width {
                        all_ok = true;
                    }
                }
            }
        }
    }
    if all_ok {
        "matched(bernoulli-fail)"
    } else if pos_phi_ok {
        "width-mismatch"
    } else if pos_ok {
        "phi-mismatch"
    } else if nearest.map_or(true, |d| d > 0.03) {
        "phantom(>3cm)"
    } else {
        "near-miss(1-3cm)"
    }
}

fn main() {
    let params = SimParams::default();
    let args: Vec<String> = std::env::args().collect();
    let n: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let gamma: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let policy: Policy = args
        .get(3)
        .map(|s| s.as_str())
        .unwrap_or("mvp")
        .parse()
        .unwrap();

    let mut p = params.clone();
    p.controller.gamma = gamma;
    let mut counts: std::collections::BTreeMap<&'static str, u32> = Default::default();
    // Failure classes bucketed by number of remaining objects.
    let mut by_remaining: std::collections::BTreeMap<usize, (u32, u32)> = Default::default();
    let mut capped = 0;
    for seed in 2000..2000 + n {
        let mut scene = generate_scene(20, seed, &p.scene).unwrap();
        let mut map = GridMap::new(&p.map).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1);
        let mut attempts = 0;
        loop {
            if scene.remaining_objects() == 0 {
                break;
            }
            if attempts >= 40 {
                capped += 1;
                break;
            }
            let before = scene.clone();
            let remaining = scene.remaining_objects();
            let rec = run_attempt(&mut scene, &mut map, policy, &p, &mut rng);
            attempts += 1;
            let entry = by_remaining.entry(remaining).or_default();
            entry.1 += 1;
            if rec.success {
                entry.0 += 1;
                *counts.entry("success").or_default() += 1;
            } else if let Some(g) = &rec.grasp {
                *counts.entry(classify(&before, g, &p.tolerances)).or_default() += 1;
            }
        }
    }
    println!("gamma={gamma} episodes={n} capped={capped}");
    for (k, v) in &counts {
        println!("  {k:<24} {v}");
    }
    println!("  success/attempts by remaining objects:");
    for (rem, (s, t)) in by_remaining.iter() {
        println!("    rem={rem:<3} {s}/{t}");
    }
}
