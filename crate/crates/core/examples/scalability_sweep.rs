//! Failure rate against the fire-to-agent ratio when the quench rate or the
//! speed is raised, and the ratio at which half the missions fail.
//!
//! cargo run --release --example scalability_sweep [runs]

use wildfire_planner::harness::{failure_knee, run_sweep, sweep_preset};

fn main() -> wildfire_planner::Result<()> {
    let runs = std::env::args().nth(1).map_or(20, |s| s.parse().expect("runs"));
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    for name in ["quench", "speed"] {
        let spec = sweep_preset(name, runs)?;
        let rows = run_sweep(&spec, jobs)?;
        println!("varying {name}:");
        for &v in &spec.values {
            let cells: Vec<_> = rows
                .iter()
                .filter(|r| (if name == "quench" { r.quench_rate } else { r.speed }) == v)
                .cloned()
                .collect();
            let line: Vec<String> = cells.iter().map(|r| format!("{:>3.0}", r.failure_rate)).collect();
            let knee = failure_knee(&cells, 50.0).map_or("-".into(), |k| format!("{k:.2}"));
            println!("  {v:>4}: failure % by ratio [{}]  knee {knee}", line.join(" "));
        }
    }
    Ok(())
}
