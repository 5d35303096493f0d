//! Brute-force references: an RK4 integrator for the area ODE and an
//! exhaustive assignment search for small static instances.
//!
//! Nothing here uses the closed forms in [`crate::fire`] or the schedule
//! builder, so both can be checked against it.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fire::{QuenchCapability, QuenchTime};
use crate::geom::Vec2;
use crate::schedule::{AgentSnapshot, CostFunction, FireBook, FireId, FireSnapshot};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Default RK4 step, s.
pub const ODE_STEP: f64 = 1e-3;
/// Give up looking for a zero crossing after this much simulated time, s.
pub const ODE_HORIZON: f64 = 1e5;

fn rate(a: f64, s: f64, q: f64) -> f64 {
    2.0 * SQRT_PI * s * a.max(0.0).sqrt() - q
}

fn rk4(a: f64, s: f64, q: f64, h: f64) -> f64 {
    let k1 = rate(a, s, q);
    let k2 = rate(a + 0.5 * h * k1, s, q);
    let k3 = rate(a + 0.5 * h * k2, s, q);
    let k4 = rate(a + h * k3, s, q);
    a + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates the unattended growth ODE for `t` seconds.
pub fn ode_grow(area: f64, spread_rate: f64, t: f64, h: f64) -> f64 {
    ode_evolve(area, spread_rate, 0.0, t, h)
}

/// Integrates the quenched ODE for `t` seconds, clamped at zero.
pub fn ode_evolve(area: f64, spread_rate: f64, quench_rate: f64, t: f64, h: f64) -> f64 {
    let mut a = area;
    let n = (t / h).floor() as u64;
    for _ in 0..n {
        a = rk4(a, spread_rate, quench_rate, h);
        if a <= 0.0 {
            return 0.0;
        }
    }
    let rest = t - n as f64 * h;
    if rest > 0.0 {
        a = rk4(a, spread_rate, quench_rate, rest);
    }
    a.max(0.0)
}

/// Time for a quenched fire to reach zero area, by RK4 with step 1e-3 s.
pub fn ode_quench_oracle(area: f64, spread_rate: f64, quench_rate: f64) -> QuenchTime {
    ode_quench_time(area, spread_rate, quench_rate, ODE_STEP, ODE_HORIZON)
}

/// [`ode_quench_oracle`] with explicit step and horizon. The zero crossing is
/// located by linear interpolation inside the last step.
pub fn ode_quench_time(area: f64, spread_rate: f64, quench_rate: f64, h: f64, horizon: f64) -> QuenchTime {
    if area <= 0.0 {
        return QuenchTime::Finite(0.0);
    }
    if rate(area, spread_rate, quench_rate) >= 0.0 {
        return QuenchTime::Infeasible;
    }
    let mut a = area;
    let mut t = 0.0;
    while t < horizon {
        let next = rk4(a, spread_rate, quench_rate, h);
        if next <= 0.0 {
            return QuenchTime::Finite(t + h * a / (a - next));
        }
        a = next;
        t += h;
    }
    QuenchTime::Infeasible
}

/// A static planning problem small enough to enumerate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallInstance {
    pub agents: Vec<AgentSnapshot>,
    pub fires: Vec<FireSnapshot>,
}

pub const MAX_AGENTS: usize = 3;
pub const MAX_FIRES: usize = 6;
pub const CANDIDATE_CAP: u128 = 10_000_000;

impl SmallInstance {
    pub fn book(&self) -> FireBook {
        self.fires.iter().copied().collect()
    }

    pub fn fire_ids(&self) -> Vec<FireId> {
        self.fires.iter().map(|f| f.id).collect()
    }

    /// Number of ordered partitions of the fires over the agents.
    pub fn candidate_count(&self) -> u128 {
        let n = self.fires.len() as u128;
        let m = self.agents.len() as u128;
        if m == 0 {
            return 0;
        }
        let fact: u128 = (1..=n).product();
        // C(n + m - 1, m - 1)
        let mut c: u128 = 1;
        for k in 0..(m - 1) {
            c = c * (n + m - 1 - k) / (k + 1);
        }
        fact * c
    }

    pub fn validate(&self) -> Result<()> {
        if self.agents.is_empty() || self.agents.len() > MAX_AGENTS {
            return Err(Error::invalid("agents", format!("need 1..={MAX_AGENTS} agents")));
        }
        if self.fires.len() > MAX_FIRES {
            return Err(Error::invalid("fires", format!("at most {MAX_FIRES} fires")));
        }
        let cands = self.candidate_count();
        if cands > CANDIDATE_CAP {
            return Err(Error::InstanceTooLarge {
                candidates: cands,
                cap: CANDIDATE_CAP,
            });
        }
        let mut ids = self.fire_ids();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != self.fires.len() {
            return Err(Error::invalid("fires", "duplicate fire id"));
        }
        Ok(())
    }

    /// Random instance on a 1 km square with a mix of easy and hard fires.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, agents: usize, fires: usize) -> Self {
        let agents = (0..agents)
            .map(|i| {
                let (v, q) = if rng.random_bool(0.5) { (26.0, 26.0) } else { (16.0, 16.0) };
                AgentSnapshot::new(
                    i + 1,
                    Vec2::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0)),
                    QuenchCapability { quench_rate: q, speed: v },
                )
            })
            .collect();
        let fires = (0..fires)
            .map(|k| {
                let r: f64 = rng.random_range(5.0..60.0);
                FireSnapshot {
                    id: k + 1,
                    center: Vec2::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0)),
                    area: std::f64::consts::PI * r * r,
                    spread_rate: 0.05,
                }
            })
            .collect();
        Self { agents, fires }
    }
}

/// Task timing recomputed step by step with the RK4 oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayedTask {
    pub fire: FireId,
    pub start: f64,
    pub area_at_start: f64,
    /// `None` when the fire cannot be put out from `area_at_start`.
    pub quench: Option<f64>,
}

/// Replays one agent's path with the ODE instead of closed forms. Returns the
/// per-task timings up to and including the first infeasible task.
pub fn replay_path(agent: &AgentSnapshot, path: &[FireId], fires: &FireBook) -> Result<Vec<ReplayedTask>> {
    let mut out = Vec::with_capacity(path.len());
    let mut pos = agent.position;
    let mut t = agent.ready_offset;
    let q = agent.capability.quench_rate;
    for &j in path {
        let f = fires.get(j).ok_or(Error::UnknownFire(j))?;
        t += pos.distance(f.center) / agent.capability.speed;
        let a = ode_grow(f.area, f.spread_rate, t, 1e-2);
        let quench = ode_quench_oracle(a, f.spread_rate, q).finite();
        out.push(ReplayedTask {
            fire: j,
            start: t,
            area_at_start: a,
            quench,
        });
        let Some(d) = quench else { break };
        t += d;
        pos = f.center;
    }
    Ok(out)
}

/// Path cost computed from replayed timings; `None` if infeasible.
pub fn replay_cost(agent: &AgentSnapshot, path: &[FireId], fires: &FireBook, cost: CostFunction) -> Result<Option<f64>> {
    let tasks = replay_path(agent, path, fires)?;
    if tasks.len() < path.len() || tasks.iter().any(|t| t.quench.is_none()) {
        return Ok(None);
    }
    let q = agent.capability.quench_rate;
    Ok(Some(match cost {
        CostFunction::Dpmc => {
            let mut margin = 0.0;
            let mut starts = 0.0;
            for t in &tasks {
                let s = fires.get(t.fire).expect("checked").spread_rate;
                let crit_root = q / (2.0 * SQRT_PI * s);
                margin += crit_root - t.area_at_start.sqrt();
                starts += t.start;
            }
            margin * starts
        }
        CostFunction::Baseline => {
            let last = tasks.last().map_or(agent.ready_offset, |t| t.start + t.quench.unwrap_or(0.0));
            last - agent.ready_offset
        }
    }))
}

/// Feasibility audit of an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionAudit {
    /// Every path can be flown and every fire on it put out.
    pub paths_feasible: bool,
    /// No fire is on two paths.
    pub conflict_free: bool,
    /// Every fire of the instance is on some path.
    pub covers_all: bool,
}

impl SolutionAudit {
    pub fn is_complete(&self) -> bool {
        self.paths_feasible && self.conflict_free && self.covers_all
    }
}

pub fn audit_solution(inst: &SmallInstance, paths: &[Vec<FireId>]) -> Result<SolutionAudit> {
    let book = inst.book();
    let mut paths_feasible = paths.len() == inst.agents.len();
    for (a, p) in inst.agents.iter().zip(paths) {
        let tasks = replay_path(a, p, &book)?;
        paths_feasible &= tasks.len() == p.len() && tasks.iter().all(|t| t.quench.is_some());
    }
    let mut seen: Vec<FireId> = paths.iter().flatten().copied().collect();
    let n = seen.len();
    seen.sort_unstable();
    seen.dedup();
    let conflict_free = seen.len() == n;
    let covers_all = inst.fires.iter().all(|f| seen.contains(&f.id));
    Ok(SolutionAudit {
        paths_feasible,
        conflict_free,
        covers_all,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub feasible: bool,
    /// Minimum summed path cost over complete feasible assignments.
    pub best_cost: Option<f64>,
    pub paths: Option<Vec<Vec<FireId>>>,
    pub candidates: u64,
}

/// Enumerates every assignment of every fire to exactly one agent, in every
/// order, and returns the cheapest one whose paths are all feasible.
///
/// Path timings come from the ODE oracle only for the winning candidate;
/// the enumeration itself uses an independent closed-form walk.
pub fn exhaustive_assign(inst: &SmallInstance, cost: CostFunction) -> Result<OracleVerdict> {
    inst.validate()?;
    let mut e = Enum {
        inst,
        cost,
        used: vec![false; inst.fires.len()],
        paths: vec![Vec::new(); inst.agents.len()],
        best: None,
        candidates: 0,
    };
    e.dfs(0);
    let candidates = e.candidates;
    Ok(match e.best {
        Some((c, paths)) => OracleVerdict {
            feasible: true,
            best_cost: Some(c),
            paths: Some(paths),
            candidates,
        },
        None => OracleVerdict {
            feasible: false,
            best_cost: None,
            paths: None,
            candidates,
        },
    })
}

struct Enum<'a> {
    inst: &'a SmallInstance,
    cost: CostFunction,
    used: Vec<bool>,
    /// Fire indices per agent.
    paths: Vec<Vec<usize>>,
    best: Option<(f64, Vec<Vec<FireId>>)>,
    candidates: u64,
}

/// Independent closed-form walk of one path: (summed margins, summed starts,
/// finish time) or `None` if some fire cannot be put out.
fn walk(agent: &AgentSnapshot, path: &[usize], fires: &[FireSnapshot]) -> Option<(f64, f64, f64)> {
    let q = agent.capability.quench_rate;
    let mut pos = agent.position;
    let mut t = agent.ready_offset;
    let (mut margin, mut starts) = (0.0, 0.0);
    for &k in path {
        let f = &fires[k];
        t += pos.distance(f.center) / agent.capability.speed;
        let r = f.area.sqrt() + SQRT_PI * f.spread_rate * t;
        let c = 2.0 * SQRT_PI * f.spread_rate;
        if c * r >= q {
            return None;
        }
        // time to zero from sqrt-area r
        let d = 2.0 * q / (c * c) * (q / (q - c * r)).ln() - 2.0 * r / c;
        margin += q / c - r;
        starts += t;
        t += d;
        pos = f.center;
    }
    Some((margin, starts, t))
}

impl Enum<'_> {
    fn dfs(&mut self, agent: usize) {
        let fires = &self.inst.fires;
        let n = fires.len();
        if self.used.iter().all(|&u| u) {
            self.candidates += 1;
            self.evaluate();
            return;
        }
        if agent == self.paths.len() {
            return;
        }
        // prune when the current path is already infeasible
        if walk(&self.inst.agents[agent], &self.paths[agent], fires).is_none() {
            return;
        }
        for k in 0..n {
            if self.used[k] {
                continue;
            }
            self.used[k] = true;
            self.paths[agent].push(k);
            self.dfs(agent);
            self.paths[agent].pop();
            self.used[k] = false;
        }
        if agent + 1 < self.paths.len() {
            self.dfs(agent + 1);
        }
    }

    fn evaluate(&mut self) {
        let fires = &self.inst.fires;
        let mut total = 0.0;
        for (a, p) in self.inst.agents.iter().zip(&self.paths) {
            let Some((margin, starts, finish)) = walk(a, p, fires) else { return };
            total += match self.cost {
                CostFunction::Dpmc => margin * starts,
                CostFunction::Baseline => finish - a.ready_offset,
            };
        }
        if self.best.as_ref().is_none_or(|(b, _)| total < *b) {
            let paths = self
                .paths
                .iter()
                .map(|p| p.iter().map(|&k| fires[k].id).collect())
                .collect();
            self.best = Some((total, paths));
        }
    }
}
