//! One agent searching for a single fire: prints every mode switch and the
//! moment the fire enters its sensing radius.
//!
//! cargo run --example search_walk [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wildfire_planner::search::{sample_temperature, search_step, try_detect, SearchParams, SearchState, TemperatureField};
use wildfire_planner::{Area, Vec2};

fn main() {
    let seed = std::env::args().nth(1).map_or(3, |s| s.parse().expect("seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let area = Area::new(1000.0, 1000.0);
    let params = SearchParams::default();
    let fire = Vec2::new(800.0, 750.0);
    let field = TemperatureField::from_fires(&params, [(fire, 1500.0)]);

    let (speed, dt, sensing) = (20.0, 0.1, 150.0);
    let mut pos = Vec2::new(100.0, 100.0);
    let mut state = SearchState::default();
    let mut mode = None;
    let mut travelled = 0.0;
    for k in 0..200_000 {
        let t = k as f64 * dt;
        if !try_detect(pos, sensing, [(1, fire)], &[]).is_empty() {
            println!("t={t:>7.1}s detected the fire from ({:.0}, {:.0}) after {travelled:.0} m", pos.x, pos.y);
            return;
        }
        let (temp, grad) = sample_temperature(&field, &area, pos);
        let (step, next) = search_step(state, &params, temp, grad, speed, dt, &mut rng);
        if mode != Some(next.mode) {
            println!("t={t:>7.1}s {:?} at ({:.0}, {:.0}), {temp:.1} degrees", next.mode, pos.x, pos.y);
            mode = Some(next.mode);
        }
        let target = pos + step;
        let clamped = area.clamp(target);
        if clamped != target {
            // Bounced off the boundary: start a fresh leg.
            state = SearchState { leg_remaining: 0.0, ..next };
        } else {
            state = next;
        }
        travelled += pos.distance(clamped);
        pos = clamped;
    }
    println!("no detection within the time limit");
}
