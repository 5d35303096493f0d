//! Per-run performance indices and their aggregation over a batch.
//!
//! Everything is computed from the event log alone, so a saved JSONL trace
//! can be re-scored without re-running the simulation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::FireId;
use crate::sim::{Event, EventKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub success: bool,
    /// Time of the last quench on success; end of the run otherwise.
    pub completion_time: f64,
    /// Sum of per-fire quench durations, including unfinished ones.
    pub total_quench_time: f64,
    pub fer_per_fire: Vec<(FireId, f64)>,
    pub mean_fer: f64,
    pub replans: usize,
    /// Consensus iterations used by each replan.
    pub rounds_per_replan: Vec<usize>,
    pub converged_replans: usize,
    pub deadlocks: usize,
}

impl RunMetrics {
    pub fn consensus_rounds_mean(&self) -> f64 {
        mean(&self.rounds_per_replan.iter().map(|&r| r as f64).collect::<Vec<_>>())
    }
}

#[derive(Default)]
struct FireTrace {
    initial: Option<f64>,
    peak: f64,
    quench_start: Option<f64>,
    quenched_at: Option<f64>,
    lost: bool,
}

/// Walks a finished run's event log.
pub fn compute_run_metrics(events: &[Event]) -> RunMetrics {
    let mut fires: BTreeMap<FireId, FireTrace> = BTreeMap::new();
    let mut end = 0.0f64;
    let mut rounds = Vec::new();
    let mut converged = 0;
    let mut deadlocks = 0;
    for e in events {
        end = end.max(e.t);
        if e.kind == EventKind::Replan {
            rounds.push(e.rounds.unwrap_or(0));
            converged += usize::from(e.converged == Some(true));
            deadlocks += usize::from(e.deadlock == Some(true));
            continue;
        }
        let Some(j) = e.fire else { continue };
        let f = fires.entry(j).or_default();
        if let Some(a) = e.area {
            f.peak = f.peak.max(a);
        }
        match e.kind {
            EventKind::Spawn => f.initial = e.area,
            EventKind::QuenchStart => f.quench_start = Some(e.t),
            EventKind::Quenched => f.quenched_at = Some(e.t),
            EventKind::Infeasible => f.lost = true,
            _ => {}
        }
    }
    let mut fer = Vec::with_capacity(fires.len());
    let mut total_quench = 0.0;
    let mut last_quench = 0.0f64;
    let mut all_out = true;
    let mut any_lost = false;
    for (&j, f) in &fires {
        if let Some(a0) = f.initial.filter(|a| *a > 0.0) {
            fer.push((j, ((f.peak - a0) / a0).max(0.0)));
        }
        if let Some(s) = f.quench_start {
            let stop = f.quenched_at.unwrap_or(end);
            total_quench += stop - s;
        }
        match f.quenched_at {
            Some(t) => last_quench = last_quench.max(t),
            None => all_out = false,
        }
        any_lost |= f.lost;
    }
    let success = all_out && !any_lost;
    let fer_values: Vec<f64> = fer.iter().map(|(_, v)| *v).collect();
    RunMetrics {
        success,
        completion_time: if success { last_quench } else { end },
        total_quench_time: total_quench,
        mean_fer: mean(&fer_values),
        fer_per_fire: fer,
        replans: rounds.len(),
        rounds_per_replan: rounds,
        converged_replans: converged,
        deadlocks,
    }
}

/// One row of the per-run CSV. Column names are part of the output format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub run_id: usize,
    pub seed: u64,
    pub success: bool,
    pub completion_time_s: f64,
    pub total_quench_time_s: f64,
    pub mean_fer: f64,
    pub replans: usize,
    pub consensus_rounds_mean: f64,
    pub deadlocks: usize,
}

impl RunRow {
    pub fn new(run_id: usize, seed: u64, m: &RunMetrics) -> Self {
        Self {
            run_id,
            seed,
            success: m.success,
            completion_time_s: m.completion_time,
            total_quench_time_s: m.total_quench_time,
            mean_fer: m.mean_fer,
            replans: m.replans,
            consensus_rounds_mean: m.consensus_rounds_mean(),
            deadlocks: m.deadlocks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for fewer than two values.
    pub sd: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        let m = mean(values);
        let sd = if n < 2 {
            0.0
        } else {
            let mut sq: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
            sq.sort_by(f64::total_cmp);
            (sq.iter().sum::<f64>() / (n - 1) as f64).sqrt()
        };
        Self { n, mean: m, sd }
    }
}

/// Mean of sorted values, so the result does not depend on input order.
fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.iter().sum::<f64>() / v.len() as f64
}

/// Statistic over successful runs and over all runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitStat {
    pub successful: Stat,
    pub all: Stat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub runs: usize,
    pub successes: usize,
    /// Percent of runs in which every fire was quenched.
    pub success_rate: f64,
    pub completion_time_s: SplitStat,
    pub total_quench_time_s: SplitStat,
    pub mean_fer: SplitStat,
    /// Percent of replans whose consensus converged without deadlock removal.
    pub convergence_rate: f64,
    /// Mean consensus iterations per replan.
    pub mean_iterations: f64,
    pub deadlocks: usize,
}

pub fn aggregate(runs: &[RunMetrics]) -> Result<Summary> {
    if runs.is_empty() {
        return Err(Error::Empty("runs"));
    }
    let split = |f: &dyn Fn(&RunMetrics) -> f64| {
        let all: Vec<f64> = runs.iter().map(f).collect();
        let ok: Vec<f64> = runs.iter().filter(|r| r.success).map(f).collect();
        SplitStat {
            successful: Stat::of(&ok),
            all: Stat::of(&all),
        }
    };
    let successes = runs.iter().filter(|r| r.success).count();
    let replans: usize = runs.iter().map(|r| r.replans).sum();
    let converged: usize = runs.iter().map(|r| r.converged_replans).sum();
    let rounds: Vec<f64> = runs
        .iter()
        .flat_map(|r| r.rounds_per_replan.iter().map(|&x| x as f64))
        .collect();
    Ok(Summary {
        runs: runs.len(),
        successes,
        success_rate: 100.0 * successes as f64 / runs.len() as f64,
        completion_time_s: split(&|r| r.completion_time),
        total_quench_time_s: split(&|r| r.total_quench_time),
        mean_fer: split(&|r| r.mean_fer),
        convergence_rate: if replans == 0 {
            100.0
        } else {
            100.0 * converged as f64 / replans as f64
        },
        mean_iterations: mean(&rounds),
        deadlocks: runs.iter().map(|r| r.deadlocks).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn ev(t: f64, kind: EventKind, fire: Option<FireId>, area: Option<f64>) -> Event {
        Event {
            t,
            kind,
            agent: Some(1),
            fire,
            position: Some(Vec2::ZERO),
            area,
            rounds: None,
            converged: None,
            deadlock: None,
        }
    }

    fn three_fire_log() -> Vec<Event> {
        let mut r = ev(0.0, EventKind::Replan, None, None);
        r.rounds = Some(4);
        r.converged = Some(true);
        r.deadlock = Some(false);
        vec![
            ev(0.0, EventKind::Spawn, Some(1), Some(100.0)),
            ev(0.0, EventKind::Spawn, Some(2), Some(50.0)),
            ev(0.0, EventKind::Spawn, Some(3), Some(10.0)),
            r,
            ev(0.0, EventKind::QuenchStart, Some(1), Some(100.0)),
            ev(6.0, EventKind::Quenched, Some(1), Some(0.0)),
            ev(20.0, EventKind::QuenchStart, Some(2), Some(100.0)),
            ev(30.0, EventKind::Quenched, Some(2), Some(0.0)),
            ev(50.0, EventKind::QuenchStart, Some(3), Some(15.0)),
            ev(52.5, EventKind::Quenched, Some(3), Some(0.0)),
        ]
    }

    #[test]
    fn three_fire_log_by_hand() {
        let m = compute_run_metrics(&three_fire_log());
        assert!(m.success);
        assert_eq!(m.completion_time, 52.5);
        assert_eq!(m.total_quench_time, 6.0 + 10.0 + 2.5);
        // FERs 0, 1, 0.5
        assert_eq!(m.fer_per_fire, vec![(1, 0.0), (2, 1.0), (3, 0.5)]);
        assert!((m.mean_fer - 0.5).abs() < 1e-15);
        assert_eq!(m.replans, 1);
        assert_eq!(m.consensus_rounds_mean(), 4.0);
    }

    #[test]
    fn fer_is_shift_invariant() {
        let log = three_fire_log();
        let shifted: Vec<Event> = log
            .iter()
            .cloned()
            .map(|mut e| {
                e.t += 1000.0;
                e
            })
            .collect();
        assert_eq!(
            compute_run_metrics(&log).fer_per_fire,
            compute_run_metrics(&shifted).fer_per_fire
        );
    }

    #[test]
    fn infeasible_fire_fails_the_run() {
        let mut log = three_fire_log();
        log.truncate(7);
        log.push(ev(40.0, EventKind::Infeasible, Some(3), Some(500.0)));
        let m = compute_run_metrics(&log);
        assert!(!m.success);
        assert_eq!(m.completion_time, 40.0);
        assert!((m.fer_per_fire[2].1 - 49.0).abs() < 1e-12);
    }

    #[test]
    fn aggregate_rates_and_stats() {
        let ok = compute_run_metrics(&three_fire_log());
        let mut bad = ok.clone();
        bad.success = false;
        bad.completion_time = 7200.0;
        let runs: Vec<RunMetrics> = (0..100)
            .map(|i| if i < 71 { ok.clone() } else { bad.clone() })
            .collect();
        let s = aggregate(&runs).unwrap();
        assert_eq!(s.success_rate, 71.0);
        assert_eq!(s.completion_time_s.successful.mean, 52.5);
        assert_eq!(s.completion_time_s.successful.sd, 0.0);
        let all: Vec<f64> = runs.iter().map(|r| r.completion_time).collect();
        let m = all.iter().sum::<f64>() / 100.0;
        let sd = (all.iter().map(|v| (v - m).powi(2)).sum::<f64>() / 99.0).sqrt();
        assert!((s.completion_time_s.all.mean - m).abs() < 1e-9);
        assert!((s.completion_time_s.all.sd - sd).abs() < 1e-9);
    }

    #[test]
    fn aggregate_rejects_empty() {
        assert!(matches!(aggregate(&[]), Err(Error::Empty(_))));
    }
}
