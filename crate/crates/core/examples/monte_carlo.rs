//! Monte-Carlo batch of one preset under both cost functions.
//!
//! cargo run --release --example monte_carlo [preset] [runs]

use wildfire_planner::config::preset;
use wildfire_planner::harness::run_batch;
use wildfire_planner::CostFunction;

fn main() -> wildfire_planner::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "hetero-po-25".into());
    let runs = args.next().map_or(50, |s| s.parse().expect("runs"));
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());

    println!("{name}, {runs} runs");
    for cost in [CostFunction::Dpmc, CostFunction::Baseline] {
        let mut cfg = preset(&name)?;
        cfg.cost = cost;
        let s = run_batch(&cfg, runs, jobs)?.summary;
        println!(
            "{cost:?}: success {:.0}%  completion {:.0}±{:.0}s  quench {:.0}s  FER {:.2}  convergence {:.1}%  deadlocks {}",
            s.success_rate,
            s.completion_time_s.successful.mean,
            s.completion_time_s.successful.sd,
            s.total_quench_time_s.successful.mean,
            s.mean_fer.successful.mean,
            s.convergence_rate,
            s.deadlocks
        );
    }
    Ok(())
}
