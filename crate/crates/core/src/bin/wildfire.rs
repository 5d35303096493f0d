use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wildfire_planner::config::{load_config, preset, Observability, ScenarioConfig};
use wildfire_planner::consensus::{run_rounds, AgentPlan, ConsensusConfig};
use wildfire_planner::harness::{
    run_batch, run_single, run_sweep, split_seed, sweep_preset, sweep_to_csv, write_atomic,
    write_batch, write_json,
};
use wildfire_planner::oracle::{audit_solution, exhaustive_assign, SmallInstance};
use wildfire_planner::sim::write_event_log;
use wildfire_planner::{CostFunction, Result};

#[derive(Parser)]
#[command(name = "wildfire", version, about = "Multi-UAV wildfire mitigation planner and simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Scenario {
    /// JSON scenario file
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in scenario, e.g. homo-po-25 or demo-po
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cost: Option<CostFunction>,
    #[arg(long)]
    observability: Option<Observability>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

impl Scenario {
    fn load(&self) -> Result<ScenarioConfig> {
        let mut cfg = match (&self.config, &self.preset) {
            (Some(p), _) => load_config(p)?,
            (None, Some(name)) => preset(name)?,
            (None, None) => ScenarioConfig::default(),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(c) = self.cost {
            cfg.cost = c;
        }
        if let Some(o) = self.observability {
            cfg.observability = o;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate one mission and write its event trace
    Run(Scenario),
    /// Monte-Carlo batch: runs.csv and summary.json
    Batch {
        #[command(flatten)]
        scenario: Scenario,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Failure rate over fire-to-agent ratio: `quench` or `speed`
    Sweep {
        #[arg(long, default_value = "quench")]
        name: String,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Exhaustive assignment check of a small instance
    Oracle {
        /// SmallInstance JSON; a random one is drawn when absent
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        agents: usize,
        #[arg(long, default_value_t = 4)]
        fires: usize,
        #[arg(long, default_value = "dpmc")]
        cost: CostFunction,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Run(s) => {
            let cfg = s.load()?;
            let r = run_single(&cfg, 0, cfg.seed)?;
            write_event_log(&r.events, s.out_dir.join("events.jsonl"))?;
            write_json(s.out_dir.join("metrics.json"), &r.metrics)?;
            println!(
                "success={} completion={:.1}s quench={:.1}s mean_fer={:.3} replans={}",
                r.metrics.success,
                r.metrics.completion_time,
                r.metrics.total_quench_time,
                r.metrics.mean_fer,
                r.metrics.replans
            );
        }
        Cmd::Batch { scenario, runs, jobs } => {
            let cfg = scenario.load()?;
            let b = run_batch(&cfg, runs, jobs)?;
            write_batch(&scenario.out_dir, &b)?;
            let s = &b.summary;
            println!(
                "runs={} success={:.1}% completion={:.1}s fer={:.3} convergence={:.1}%",
                s.runs,
                s.success_rate,
                s.completion_time_s.successful.mean,
                s.mean_fer.successful.mean,
                s.convergence_rate
            );
        }
        Cmd::Sweep { name, runs, jobs, seed, out_dir } => {
            let mut spec = sweep_preset(&name, runs)?;
            if let Some(s) = seed {
                spec.base.seed = s;
            }
            let rows = run_sweep(&spec, jobs)?;
            write_atomic(out_dir.join(format!("sweep-{name}.csv")), &sweep_to_csv(&rows)?)?;
            for r in &rows {
                println!(
                    "v={} q={} ratio={} failure={:.1}%",
                    r.speed, r.quench_rate, r.ratio, r.failure_rate
                );
            }
        }
        Cmd::Oracle { config, seed, agents, fires, cost, out_dir } => {
            let inst: SmallInstance = match config {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| wildfire_planner::Error::Io {
                        path: p.clone(),
                        source: e,
                    })?;
                    serde_json::from_str(&text).map_err(|source| wildfire_planner::Error::ConfigParse {
                        path: p.clone(),
                        source,
                    })?
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, 0));
                    SmallInstance::random(&mut rng, agents, fires)
                }
            };
            let verdict = exhaustive_assign(&inst, cost)?;
            let plans = inst
                .agents
                .iter()
                .map(|a| AgentPlan::fresh(*a, inst.fire_ids()))
                .collect();
            let creds = run_rounds(plans, &inst.book(), cost, &ConsensusConfig::for_team(inst.agents.len()), None)?;
            let audit = audit_solution(&inst, &creds.paths)?;
            let report = serde_json::json!({
                "instance": inst,
                "oracle": verdict,
                "planner": {
                    "paths": creds.paths,
                    "converged": creds.converged,
                    "audit": audit,
                },
            });
            write_json(out_dir.join("oracle.json"), &report)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
        }
    }
    Ok(())
}
