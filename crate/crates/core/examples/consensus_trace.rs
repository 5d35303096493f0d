//! Round-by-round trace of the bid exchange on a small full-observability
//! instance, once per cost function.
//!
//! cargo run --example consensus_trace [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wildfire_planner::consensus::{run_rounds, AgentPlan, ConsensusConfig};
use wildfire_planner::oracle::SmallInstance;
use wildfire_planner::CostFunction;

fn main() -> wildfire_planner::Result<()> {
    let seed = std::env::args().nth(1).map_or(5, |s| s.parse().expect("seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = SmallInstance::random(&mut rng, 3, 6);
    let book = inst.book();

    for a in &inst.agents {
        println!(
            "U{} at ({:.0}, {:.0}) v={} q={}",
            a.id, a.position.x, a.position.y, a.capability.speed, a.capability.quench_rate
        );
    }
    for f in &inst.fires {
        println!("f{} at ({:.0}, {:.0}) area {:.0} m²", f.id, f.center.x, f.center.y, f.area);
    }

    for cost in [CostFunction::Dpmc, CostFunction::Baseline] {
        println!("\n== {cost:?}");
        let plans = inst.agents.iter().map(|a| AgentPlan::fresh(*a, inst.fire_ids())).collect();
        let mut trace = Vec::new();
        let out = run_rounds(plans, &book, cost, &ConsensusConfig::for_team(inst.agents.len()), Some(&mut trace))?;
        for t in &trace {
            let bids: Vec<String> = t
                .bids
                .iter()
                .filter_map(|(j, bid, w)| {
                    let w = (*w)?;
                    Some(match bid.value() {
                        Some(v) => format!("f{j}:U{w}@{v:.3e}"),
                        None => format!("f{j}:U{w}@inf"),
                    })
                })
                .collect();
            println!("round {:>2} U{} bundle {:?} path {:?} | {}", t.round, t.agent, t.bundle, t.path, bids.join(" "));
        }
        println!(
            "paths {:?} converged={} after {} rounds (agreement from round {}), deadlock removal={}",
            out.paths, out.converged, out.rounds_executed, out.iterations_used, out.deadlock_resolved
        );
    }
    Ok(())
}
