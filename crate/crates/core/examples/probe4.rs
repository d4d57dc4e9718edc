// Temporary hot-path timing probe; not part of the deliverable.
use mvp_core::controller::{mvp_velocity, utility_field, Viewpoint};
use mvp_core::episode::SimParams;
use mvp_core::grasp_map::GridMap;
use mvp_core::scene::{generate_scene, observe};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;
use std::time::Instant;

fn main() {
    let params = SimParams::default();
    let scene = generate_scene(20, 42, &params.scene).unwrap();
    let mut map = GridMap::new(&params.map).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let p = Viewpoint {
        x: 0.15,
        y: 0.15,
        z: 0.4,
    };
    // Warm the map like mid-episode state.
    for _ in 0..20 {
        for obs in observe(&scene, p, &map, &params.camera, &mut rng) {
            map.insert(&obs);
        }
    }

    let t0 = Instant::now();
    for _ in 0..100 {
        let obs = observe(&scene, p, &map, &params.camera, &mut rng);
        black_box(&obs);
    }
    println!("observe:       {:>8.3} ms/call", t0.elapsed().as_secs_f64() * 10.0);

    let t0 = Instant::now();
    for _ in 0..100 {
        let f = utility_field(&map, 0.4, (0.15, 0.15), &params.controller, &params.camera);
        black_box(&f);
    }
    println!("utility_field: {:>8.3} ms/call", t0.elapsed().as_secs_f64() * 10.0);

    let t0 = Instant::now();
    for _ in 0..100 {
        let v = mvp_velocity(&map, p, &params.controller, &params.camera);
        black_box(&v);
    }
    println!("mvp_velocity:  {:>8.3} ms/call", t0.elapsed().as_secs_f64() * 10.0);

    // Low-z variants (narrow footprint).
    let p_low = Viewpoint {
        x: 0.15,
        y: 0.15,
        z: 0.22,
    };
    let t0 = Instant::now();
    for _ in 0..100 {
        let obs = observe(&scene, p_low, &map, &params.camera, &mut rng);
        black_box(&obs);
    }
    println!("observe(z=.22):{:>8.3} ms/call", t0.elapsed().as_secs_f64() * 10.0);
    let t0 = Instant::now();
    for _ in 0..100 {
        let f = utility_field(&map, 0.22, (0.15, 0.15), &params.controller, &params.camera);
        black_box(&f);
    }
    println!("field(z=.22):  {:>8.3} ms/call", t0.elapsed().as_secs_f64() * 10.0);
}
