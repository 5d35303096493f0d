//! The six-fire, two-agent walkthrough: initial CREDS paths under partial and
//! full observability for both cost functions, then the full mission.
//!
//! cargo run --example demo_case [spread_rate]

use wildfire_planner::config::{demo_case, Observability};
use wildfire_planner::consensus::{run_rounds, AgentPlan};
use wildfire_planner::fire::{critical_area, deadline_time};
use wildfire_planner::schedule::{AgentSnapshot, FireBook, FireSnapshot};
use wildfire_planner::search::try_detect;
use wildfire_planner::sim::simulate;
use wildfire_planner::CostFunction;

fn main() -> wildfire_planner::Result<()> {
    let mut cfg = demo_case();
    if let Some(s) = std::env::args().nth(1) {
        cfg.spread_rate = s.parse().expect("spread rate");
    }
    let inst = cfg.instantiate(cfg.seed);
    let book: FireBook = inst
        .fires
        .iter()
        .enumerate()
        .map(|(k, f)| FireSnapshot {
            id: k + 1,
            center: f.center,
            area: std::f64::consts::PI * f.radius * f.radius,
            spread_rate: f.spread_rate,
        })
        .collect();

    println!("spread rate {} m/s", cfg.spread_rate);
    for (i, a) in inst.agents.iter().enumerate() {
        let q = a.capability.quench_rate;
        let ac = critical_area(q, cfg.spread_rate)?;
        print!("U{} (v={}, q={q}): critical area {ac:.0} m², deadlines", i + 1, a.capability.speed);
        for j in book.ids() {
            let f = book.get(j).unwrap();
            match deadline_time(f.area, f.spread_rate, q).seconds() {
                Some(d) => print!(" f{j}:{d:.0}s"),
                None => print!(" f{j}:passed"),
            }
        }
        println!();
    }

    for obs in [Observability::Partial, Observability::Full] {
        for cost in [CostFunction::Dpmc, CostFunction::Baseline] {
            let plans = inst
                .agents
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let detected = match obs {
                        Observability::Full => book.ids().collect(),
                        Observability::Partial => try_detect(
                            a.start,
                            a.sensing_radius,
                            book.ids().map(|j| (j, book.get(j).unwrap().center)),
                            &[],
                        ),
                    };
                    AgentPlan::fresh(AgentSnapshot::new(i + 1, a.start, a.capability), detected)
                })
                .collect();
            let out = run_rounds(plans, &book, cost, &cfg.consensus_config(), None)?;
            println!(
                "{obs:?} {cost:?}: paths {:?} converged={} unassigned={}",
                out.paths, out.converged, out.infeasible_task_count
            );
        }
    }

    for cost in [CostFunction::Dpmc, CostFunction::Baseline] {
        let mut c = cfg.clone();
        c.cost = cost;
        let out = simulate(&c, c.seed)?;
        println!(
            "mission {cost:?} PO: success={} finished at {:.1}s",
            out.success(),
            out.clock
        );
    }
    Ok(())
}
