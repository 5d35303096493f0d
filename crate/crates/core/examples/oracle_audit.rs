//! Exhaustive optimum of a small instance next to what the auction finds.
//!
//! cargo run --release --example oracle_audit [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wildfire_planner::consensus::{run_rounds, AgentPlan, ConsensusConfig};
use wildfire_planner::oracle::{audit_solution, exhaustive_assign, replay_cost, SmallInstance};
use wildfire_planner::CostFunction;

fn main() -> wildfire_planner::Result<()> {
    let seed = std::env::args().nth(1).map_or(9, |s| s.parse().expect("seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = SmallInstance::random(&mut rng, 3, 6);
    let book = inst.book();
    println!("{} agents, {} fires, {} candidate assignments", inst.agents.len(), inst.fires.len(), inst.candidate_count());

    let best = exhaustive_assign(&inst, CostFunction::Dpmc)?;
    match &best.paths {
        Some(p) => println!("oracle optimum {p:?}, cost {:.4e}", best.best_cost.unwrap()),
        None => println!("no assignment covers every fire in time"),
    }

    for cost in [CostFunction::Dpmc, CostFunction::Baseline] {
        let plans = inst.agents.iter().map(|a| AgentPlan::fresh(*a, inst.fire_ids())).collect();
        let out = run_rounds(plans, &book, cost, &ConsensusConfig::for_team(inst.agents.len()), None)?;
        let audit = audit_solution(&inst, &out.paths)?;
        let mut total = 0.0;
        for (a, p) in inst.agents.iter().zip(&out.paths) {
            total += replay_cost(a, p, &book, CostFunction::Dpmc)?.unwrap_or(f64::INFINITY);
        }
        println!(
            "{cost:?}: paths {:?} feasible={} conflict-free={} covers all={} replayed DPMC cost {total:.4e}",
            out.paths, audit.paths_feasible, audit.conflict_free, audit.covers_all
        );
    }
    Ok(())
}
