//! Fixed-step mission simulation.
//!
//! Each tick: fires advance analytically (growing, or shrinking under an
//! active quench), travelling agents move and start quenching on arrival,
//! searching agents walk, every agent senses, and any new detection triggers
//! a replan of all agents. An agent keeps the task it is already flying to or
//! quenching; only the rest of its path is recomputed.

use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Instance, Observability, ScenarioConfig};
use crate::consensus::{run_rounds, AgentPlan, ConsensusConfig};
use crate::error::{Error, Result};
use crate::fire::{
    critical_area_unchecked, evolve_unchecked, grow_unchecked, quench_time, FireState,
    FireStatus, QuenchCapability, QuenchTime,
};
use crate::geom::{Area, Vec2};
use crate::planner::PlannerState;
use crate::schedule::{AgentId, AgentSnapshot, CostFunction, FireBook, FireId, FireSnapshot};
use crate::search::{sample_temperature, search_step, try_detect, SearchParams, SearchState, TemperatureField};

const POPUP_STREAM: u64 = (1 << 32) + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "fire")]
pub enum Activity {
    Searching,
    Traveling(FireId),
    Quenching(FireId),
    Idle,
}

impl Activity {
    pub fn task(self) -> Option<FireId> {
        match self {
            Activity::Traveling(j) | Activity::Quenching(j) => Some(j),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UavState {
    pub id: AgentId,
    pub position: Vec2,
    pub capability: QuenchCapability,
    pub sensing_radius: f64,
    /// Known, unresolved fires.
    pub detected: Vec<FireId>,
    /// Remaining tasks in execution order; the head is the active one.
    pub path: Vec<FireId>,
    pub planner: PlannerState,
    pub search: SearchState,
    pub activity: Activity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Spawn,
    Detected,
    Replan,
    TravelStart,
    QuenchStart,
    Quenched,
    Infeasible,
    SearchStart,
    Final,
}

/// One state transition. Serialized as a JSONL record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub kind: EventKind,
    pub agent: Option<AgentId>,
    pub fire: Option<FireId>,
    pub position: Option<Vec2>,
    pub area: Option<f64>,
    /// Replan events only: consensus iterations used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deadlock: Option<bool>,
}

impl Event {
    fn new(t: f64, kind: EventKind) -> Self {
        Self {
            t,
            kind,
            agent: None,
            fire: None,
            position: None,
            area: None,
            rounds: None,
            converged: None,
            deadlock: None,
        }
    }
    fn agent(mut self, a: AgentId) -> Self {
        self.agent = Some(a);
        self
    }
    fn fire(mut self, j: FireId) -> Self {
        self.fire = Some(j);
        self
    }
    fn at(mut self, p: Vec2) -> Self {
        self.position = Some(p);
        self
    }
    fn area(mut self, a: f64) -> Self {
        self.area = Some(a);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct QuenchProgress {
    agent: usize,
    start: f64,
    start_area: f64,
    /// Absolute time at which the fire goes out.
    done_at: f64,
}

#[derive(Debug, Clone)]
pub struct World {
    pub clock: f64,
    pub area: Area,
    /// `fires[k]` has id `k + 1`.
    pub fires: Vec<FireState>,
    pub agents: Vec<UavState>,
    pub events: Vec<Event>,
    pub failed: bool,
    quench: Vec<Option<QuenchProgress>>,
    rngs: Vec<ChaCha8Rng>,
    popup_rng: ChaCha8Rng,
    dt: f64,
    horizon: f64,
    cost: CostFunction,
    consensus: ConsensusConfig,
    search: SearchParams,
    observability: Observability,
    popup_rate: f64,
    popup_radius: [f64; 2],
    spread_rate: f64,
    margin: f64,
    started: bool,
}

/// Final state of a run.
#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub clock: f64,
    pub failed: bool,
    pub fires: Vec<FireState>,
    pub agents: Vec<UavState>,
    pub events: Vec<Event>,
}

impl SimOutcome {
    pub fn success(&self) -> bool {
        !self.failed && self.fires.iter().all(|f| f.status == FireStatus::Quenched)
    }
}

fn index(id: FireId) -> usize {
    id - 1
}

impl World {
    pub fn new(cfg: &ScenarioConfig, instance: &Instance, run_seed: u64) -> Result<Self> {
        cfg.validate()?;
        let fires = instance
            .fires
            .iter()
            .enumerate()
            .map(|(k, f)| FireState::with_radius(k + 1, f.center, f.radius, f.spread_rate))
            .collect::<Result<Vec<_>>>()?;
        let agents: Vec<UavState> = instance
            .agents
            .iter()
            .enumerate()
            .map(|(i, a)| UavState {
                id: i + 1,
                position: a.start,
                capability: a.capability,
                sensing_radius: a.sensing_radius,
                detected: Vec::new(),
                path: Vec::new(),
                planner: PlannerState::new(i + 1),
                search: SearchState::default(),
                activity: Activity::Searching,
            })
            .collect();
        if agents.is_empty() {
            return Err(Error::invalid("agents", "team is empty"));
        }
        let rngs = (0..agents.len())
            .map(|i| {
                let mut r = ChaCha8Rng::seed_from_u64(run_seed);
                r.set_stream(i as u64);
                r
            })
            .collect();
        let mut popup_rng = ChaCha8Rng::seed_from_u64(run_seed);
        popup_rng.set_stream(POPUP_STREAM);
        let n = fires.len();
        Ok(Self {
            clock: 0.0,
            area: cfg.area,
            fires,
            agents,
            events: Vec::new(),
            failed: false,
            quench: vec![None; n],
            rngs,
            popup_rng,
            dt: cfg.dt,
            horizon: cfg.horizon,
            cost: cfg.cost,
            consensus: cfg.consensus_config(),
            search: cfg.search.clone(),
            observability: cfg.observability,
            popup_rate: cfg.popup_rate,
            popup_radius: cfg.radius_range,
            spread_rate: cfg.spread_rate,
            margin: cfg.layout_margin,
            started: false,
        })
    }

    /// Builds the world for `cfg` with the per-run draw for `run_seed`.
    pub fn from_config(cfg: &ScenarioConfig, run_seed: u64) -> Result<Self> {
        Self::new(cfg, &cfg.instantiate(run_seed), run_seed)
    }

    fn push(&mut self, e: Event) {
        self.events.push(e);
    }

    /// Initial sensing and planning at t = 0.
    pub fn start(&mut self) -> Result<()> {
        if self.started {
            return Ok(());
        }
        self.started = true;
        for k in 0..self.fires.len() {
            let f = &self.fires[k];
            let e = Event::new(0.0, EventKind::Spawn).fire(f.id).at(f.center).area(f.area);
            self.push(e);
        }
        for i in 0..self.agents.len() {
            let e = Event::new(0.0, EventKind::SearchStart)
                .agent(self.agents[i].id)
                .at(self.agents[i].position);
            self.push(e);
        }
        let fresh = self.sense();
        if fresh {
            self.replan()?;
        }
        Ok(())
    }

    pub fn is_finished(&self) -> bool {
        if self.clock >= self.horizon - 1e-9 {
            return true;
        }
        self.popup_rate == 0.0 && self.fires.iter().all(|f| f.status.is_terminal())
    }

    /// Advances the world by one time step.
    pub fn tick(&mut self) -> Result<()> {
        if !self.started {
            self.start()?;
        }
        let t0 = self.clock;
        let t1 = t0 + self.dt;
        let before: Vec<f64> = self.fires.iter().map(|f| f.area).collect();
        self.clock = t1;
        self.advance_fires(t1);
        let mut fresh = self.spawn_popups();
        self.mark_infeasible();
        self.move_travelers(t0, &before);
        self.step_searchers();
        fresh |= self.sense();
        if fresh {
            self.replan()?;
        }
        self.start_idle_searches();
        Ok(())
    }

    /// Runs until every fire is resolved or the horizon is reached.
    pub fn run(mut self) -> Result<SimOutcome> {
        self.start()?;
        while !self.is_finished() {
            self.tick()?;
        }
        Ok(self.finish())
    }

    fn finish(mut self) -> SimOutcome {
        let t = self.clock;
        for k in 0..self.fires.len() {
            if self.fires[k].status.is_terminal() {
                continue;
            }
            let f = &self.fires[k];
            let e = Event::new(t, EventKind::Final).fire(f.id).at(f.center).area(f.max_area_seen);
            self.push(e);
        }
        for a in &mut self.agents {
            a.activity = Activity::Idle;
        }
        SimOutcome {
            clock: self.clock,
            failed: self.failed,
            fires: self.fires,
            agents: self.agents,
            events: self.events,
        }
    }

    fn advance_fires(&mut self, t1: f64) {
        let dt = self.dt;
        for k in 0..self.fires.len() {
            if self.fires[k].status.is_terminal() {
                continue;
            }
            match self.quench[k] {
                Some(p) => {
                    let q = self.agents[p.agent].capability.quench_rate;
                    if t1 >= p.done_at {
                        self.fires[k].set_area(0.0);
                        self.fires[k].status = FireStatus::Quenched;
                        self.quench[k] = None;
                        let (id, c) = (self.fires[k].id, self.fires[k].center);
                        let aid = self.agents[p.agent].id;
                        self.push(Event::new(p.done_at, EventKind::Quenched).agent(aid).fire(id).at(c).area(0.0));
                        self.remove_resolved(id);
                        self.release_agent(p.agent, id);
                    } else {
                        let a = evolve_unchecked(p.start_area, self.fires[k].spread_rate, q, t1 - p.start);
                        self.fires[k].set_area(a);
                    }
                }
                None => {
                    let f = &mut self.fires[k];
                    let a = grow_unchecked(f.area, f.spread_rate, dt);
                    f.set_area(a);
                }
            }
        }
    }

    fn spawn_popups(&mut self) -> bool {
        if self.popup_rate <= 0.0 {
            return false;
        }
        let p = 1.0 - (-self.popup_rate * self.dt).exp();
        if !self.popup_rng.random_bool(p.clamp(0.0, 1.0)) {
            return false;
        }
        let m = self.margin;
        let center = Vec2::new(
            self.popup_rng.random_range(m..self.area.width - m),
            self.popup_rng.random_range(m..self.area.height - m),
        );
        let r = self
            .popup_rng
            .random_range(self.popup_radius[0]..=self.popup_radius[1]);
        let id = self.fires.len() + 1;
        let fire = FireState::with_radius(id, center, r, self.spread_rate).expect("validated radius");
        let e = Event::new(self.clock, EventKind::Spawn).fire(id).at(center).area(fire.area);
        self.fires.push(fire);
        self.quench.push(None);
        self.push(e);
        if self.observability == Observability::Full {
            self.fires[index(id)].status = FireStatus::Detected;
            for a in &mut self.agents {
                a.detected.push(id);
            }
            return true;
        }
        false
    }

    /// Flags fires that can no longer be put out and latches mission failure.
    ///
    /// A fire under quench is judged by its quenching agent only. An
    /// unattended fire is lost once no agent could quench it any more.
    pub fn mark_infeasible(&mut self) {
        for k in 0..self.fires.len() {
            let f = &self.fires[k];
            if f.status.is_terminal() {
                continue;
            }
            let s = f.spread_rate;
            let lost = match self.quench[k] {
                Some(p) => {
                    f.area >= critical_area_unchecked(self.agents[p.agent].capability.quench_rate, s)
                }
                None => {
                    let best = self
                        .agents
                        .iter()
                        .map(|a| critical_area_unchecked(a.capability.quench_rate, s))
                        .fold(0.0, f64::max);
                    f.area >= best
                }
            };
            if !lost {
                continue;
            }
            let (id, c, a) = (f.id, f.center, f.area);
            self.fires[k].status = FireStatus::Infeasible;
            self.failed = true;
            let owner = self.quench[k].take().map(|p| p.agent);
            let mut e = Event::new(self.clock, EventKind::Infeasible).fire(id).at(c).area(a);
            if let Some(i) = owner {
                e = e.agent(self.agents[i].id);
            }
            self.push(e);
            self.remove_resolved(id);
            for i in 0..self.agents.len() {
                if self.agents[i].activity.task() == Some(id) {
                    self.release_agent(i, id);
                } else {
                    self.agents[i].path.retain(|&j| j != id);
                }
            }
        }
    }

    fn remove_resolved(&mut self, id: FireId) {
        for a in &mut self.agents {
            a.detected.retain(|&j| j != id);
            a.planner.table.reset(id);
            a.planner.bundle.retain(|&j| j != id);
            a.planner.path.retain(|&j| j != id);
        }
    }

    /// Drops `done` from agent `i`'s path and starts its next task.
    fn release_agent(&mut self, i: usize, done: FireId) {
        self.agents[i].path.retain(|&j| j != done);
        self.start_next(i);
    }

    fn start_next(&mut self, i: usize) {
        let fires = &self.fires;
        self.agents[i]
            .path
            .retain(|&j| !fires[index(j)].status.is_terminal());
        let (id, pos, act, head) = {
            let a = &self.agents[i];
            (a.id, a.position, a.activity, a.path.first().copied())
        };
        match head {
            Some(j) => {
                if act != Activity::Traveling(j) {
                    self.agents[i].activity = Activity::Traveling(j);
                    self.fires[index(j)].status = FireStatus::Assigned;
                    self.push(Event::new(self.clock, EventKind::TravelStart).agent(id).fire(j).at(pos));
                }
            }
            None => {
                if act != Activity::Searching {
                    self.agents[i].activity = Activity::Searching;
                    self.agents[i].search = SearchState::default();
                    self.push(Event::new(self.clock, EventKind::SearchStart).agent(id).at(pos));
                }
            }
        }
    }

    fn move_travelers(&mut self, t0: f64, areas_t0: &[f64]) {
        for i in 0..self.agents.len() {
            let Activity::Traveling(j) = self.agents[i].activity else { continue };
            let k = index(j);
            let target = self.fires[k].center;
            let a = &mut self.agents[i];
            let dist = a.position.distance(target);
            let v = a.capability.speed;
            if dist > v * self.dt {
                let dir = (target - a.position).scale(1.0 / dist);
                a.position += dir.scale(v * self.dt);
                continue;
            }
            a.position = target;
            if self.quench[k].is_some() {
                self.release_agent(i, j);
                continue;
            }
            let t_arr = t0 + dist / v;
            let q = a.capability.quench_rate;
            let s = self.fires[k].spread_rate;
            let start_area = grow_unchecked(areas_t0[k], s, t_arr - t0);
            a.activity = Activity::Quenching(j);
            let aid = a.id;
            let done_at = match quench_time(start_area, s, q) {
                QuenchTime::Finite(d) => t_arr + d,
                QuenchTime::Infeasible => f64::INFINITY,
            };
            self.quench[k] = Some(QuenchProgress {
                agent: i,
                start: t_arr,
                start_area,
                done_at,
            });
            self.fires[k].status = FireStatus::Quenching;
            self.push(
                Event::new(t_arr, EventKind::QuenchStart)
                    .agent(aid)
                    .fire(j)
                    .at(target)
                    .area(start_area),
            );
            // keep max_area_seen exact: the area peaks at the quench start
            self.fires[k].set_area(start_area);
            if self.clock >= done_at {
                self.fires[k].set_area(0.0);
                self.fires[k].status = FireStatus::Quenched;
                self.quench[k] = None;
                self.push(Event::new(done_at, EventKind::Quenched).agent(aid).fire(j).at(target).area(0.0));
                self.remove_resolved(j);
                self.release_agent(i, j);
            } else {
                let a = evolve_unchecked(start_area, s, q, self.clock - t_arr);
                self.fires[k].area = a;
            }
        }
        self.mark_infeasible();
    }

    fn step_searchers(&mut self) {
        for i in 0..self.agents.len() {
            if self.agents[i].activity != Activity::Searching {
                continue;
            }
            let known = &self.agents[i].detected;
            let field = TemperatureField::from_fires(
                &self.search,
                self.fires
                    .iter()
                    .filter(|f| !f.status.is_terminal() && !known.contains(&f.id))
                    .map(|f| (f.center, f.area)),
            );
            let a = &self.agents[i];
            let (temp, grad) = sample_temperature(&field, &self.area, a.position);
            let (delta, mut st) = search_step(
                a.search,
                &self.search,
                temp,
                grad,
                a.capability.speed,
                self.dt,
                &mut self.rngs[i],
            );
            let (pos, dir) = self.area.reflect_move(a.position, delta);
            if dir != delta {
                st.heading = dir.heading();
            }
            let a = &mut self.agents[i];
            a.position = pos;
            a.search = st;
        }
    }

    /// Adds newly sensed fires to each agent's detected set. Returns whether
    /// any agent learned of a new fire.
    fn sense(&mut self) -> bool {
        let mut fresh = false;
        if self.observability == Observability::Full {
            for k in 0..self.fires.len() {
                if self.fires[k].status != FireStatus::Undetected {
                    continue;
                }
                self.fires[k].status = FireStatus::Detected;
                let id = self.fires[k].id;
                for a in &mut self.agents {
                    a.detected.push(id);
                }
                let (c, area) = (self.fires[k].center, self.fires[k].area);
                self.push(Event::new(self.clock, EventKind::Detected).fire(id).at(c).area(area));
                fresh = true;
            }
            return fresh;
        }
        for i in 0..self.agents.len() {
            let a = &self.agents[i];
            let found = try_detect(
                a.position,
                a.sensing_radius,
                self.fires
                    .iter()
                    .filter(|f| !f.status.is_terminal())
                    .map(|f| (f.id, f.center)),
                &a.detected,
            );
            for j in found {
                let (aid, pos) = (self.agents[i].id, self.agents[i].position);
                self.agents[i].detected.push(j);
                let f = &mut self.fires[index(j)];
                if f.status == FireStatus::Undetected {
                    f.status = FireStatus::Detected;
                }
                let area = f.area;
                self.push(Event::new(self.clock, EventKind::Detected).agent(aid).fire(j).at(pos).area(area));
                fresh = true;
            }
        }
        fresh
    }

    /// Recomputes every agent's path after its active task.
    pub fn replan(&mut self) -> Result<()> {
        let now = self.clock;
        let mut frozen: Vec<Option<FireId>> = vec![None; self.agents.len()];
        let mut plans = Vec::with_capacity(self.agents.len());
        for (i, a) in self.agents.iter().enumerate() {
            let mut snap = AgentSnapshot::new(a.id, a.position, a.capability);
            if let Some(j) = a.activity.task() {
                let f = &self.fires[index(j)];
                let (q, s) = (a.capability.quench_rate, f.spread_rate);
                let ready = match a.activity {
                    Activity::Quenching(_) => match self.quench[index(j)] {
                        Some(p) if p.agent == i => Some(p.done_at - now),
                        _ => None,
                    },
                    _ => {
                        let travel = a.position.distance(f.center) / a.capability.speed;
                        let arr = grow_unchecked(f.area, s, travel);
                        quench_time(arr, s, q).finite().map(|d| travel + d)
                    }
                };
                if let Some(r) = ready.filter(|r| r.is_finite()) {
                    frozen[i] = Some(j);
                    snap.position = f.center;
                    snap.ready_offset = r.max(0.0);
                }
            }
            plans.push(snap);
        }
        let busy: Vec<FireId> = frozen.iter().flatten().copied().collect();
        let quenching: Vec<FireId> = (0..self.fires.len())
            .filter(|&k| self.quench[k].is_some())
            .map(|k| k + 1)
            .collect();
        let book: FireBook = self
            .fires
            .iter()
            .filter(|f| !f.status.is_terminal())
            .map(|f| FireSnapshot {
                id: f.id,
                center: f.center,
                area: f.area,
                spread_rate: f.spread_rate,
            })
            .collect();
        let inputs: Vec<AgentPlan> = plans
            .into_iter()
            .zip(&self.agents)
            .map(|(snap, a)| {
                let detected = a
                    .detected
                    .iter()
                    .copied()
                    .filter(|j| {
                        book.contains(*j) && !busy.contains(j) && !quenching.contains(j)
                    })
                    .collect();
                AgentPlan::fresh(snap, detected)
            })
            .collect();
        let out = run_rounds(inputs, &book, self.cost, &self.consensus, None)?;
        let mut e = Event::new(now, EventKind::Replan);
        e.rounds = Some(out.iterations_used);
        e.converged = Some(out.converged);
        e.deadlock = Some(out.deadlock_resolved);
        self.push(e);

        for k in 0..self.fires.len() {
            if matches!(self.fires[k].status, FireStatus::Assigned) {
                self.fires[k].status = FireStatus::Detected;
            }
        }
        for (i, (path, state)) in out.paths.into_iter().zip(out.states).enumerate() {
            let mut full: Vec<FireId> = frozen[i].into_iter().collect();
            full.extend(path);
            for &j in &full {
                if self.fires[index(j)].status == FireStatus::Detected {
                    self.fires[index(j)].status = FireStatus::Assigned;
                }
            }
            let a = &mut self.agents[i];
            a.path = full;
            a.planner = state;
            if frozen[i].is_none() {
                if let Activity::Traveling(_) = a.activity {
                    // previous target dropped out of the plan
                    a.activity = Activity::Idle;
                }
                self.start_next(i);
            }
        }
        Ok(())
    }

    fn start_idle_searches(&mut self) {
        for i in 0..self.agents.len() {
            if self.agents[i].activity == Activity::Idle {
                self.start_next(i);
            }
        }
    }
}

/// Runs one mission for `cfg` with the per-run seed.
pub fn simulate(cfg: &ScenarioConfig, run_seed: u64) -> Result<SimOutcome> {
    World::from_config(cfg, run_seed)?.run()
}

/// Writes the event log as one JSON object per line.
pub fn write_event_log(events: &[Event], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    for e in events {
        serde_json::to_writer(&mut buf, e).expect("event serializes");
        buf.push(b'\n');
    }
    crate::harness::write_atomic(path, &buf)
}

pub fn read_event_log(path: impl AsRef<Path>) -> Result<Vec<Event>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            serde_json::from_str(l).map_err(|source| Error::ConfigParse {
                path: path.to_path_buf(),
                source,
            })
        })
        .collect()
}

/// Event log as a JSONL string.
pub fn events_to_jsonl(events: &[Event]) -> String {
    let mut buf = Vec::new();
    for e in events {
        serde_json::to_writer(&mut buf, e).expect("event serializes");
        writeln!(buf).expect("vec write");
    }
    String::from_utf8(buf).expect("json is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{AgentSetup, FireSetup, TeamPreset};
    use crate::fire::grow;

    fn cfg(obs: Observability) -> ScenarioConfig {
        ScenarioConfig {
            observability: obs,
            team: TeamPreset::Custom,
            ..ScenarioConfig::default()
        }
    }

    fn one_agent(at: Vec2, fires: &[(Vec2, f64)]) -> Instance {
        Instance {
            fires: fires
                .iter()
                .map(|&(center, radius)| FireSetup {
                    center,
                    radius,
                    spread_rate: 0.05,
                })
                .collect(),
            agents: vec![AgentSetup {
                start: at,
                capability: QuenchCapability::new(20.0, 20.0).unwrap(),
                sensing_radius: 300.0,
            }],
        }
    }

    fn custom(obs: Observability, n: usize) -> ScenarioConfig {
        let mut c = cfg(obs);
        c.agents = vec![crate::config::AgentSpec::new(20.0, 20.0); n];
        c
    }

    #[test]
    fn agent_on_top_of_fire_quenches_at_closed_form_time() {
        let c = custom(Observability::Full, 1);
        let p = Vec2::new(500.0, 500.0);
        let inst = one_agent(p, &[(p, 10.0)]);
        let out = World::new(&c, &inst, 1).unwrap().run().unwrap();
        assert!(out.success());
        let a0 = std::f64::consts::PI * 100.0;
        let expect = quench_time(a0, 0.05, 20.0).finite().unwrap();
        let q = out.events.iter().find(|e| e.kind == EventKind::Quenched).unwrap();
        assert!((q.t - expect).abs() < 1e-9, "{} vs {expect}", q.t);
    }

    #[test]
    fn area_strictly_decreases_while_quenched() {
        let c = custom(Observability::Full, 1);
        let p = Vec2::new(500.0, 500.0);
        let mut w = World::new(&c, &one_agent(p, &[(p, 10.0)]), 1).unwrap();
        w.start().unwrap();
        let mut last = w.fires[0].area;
        w.tick().unwrap();
        while w.fires[0].status != FireStatus::Quenched {
            assert!(w.fires[0].area < last);
            last = w.fires[0].area;
            w.tick().unwrap();
        }
    }

    #[test]
    fn unattended_fire_follows_growth_law() {
        let c = custom(Observability::Partial, 1);
        let inst = one_agent(Vec2::new(10.0, 10.0), &[(Vec2::new(900.0, 900.0), 10.0)]);
        let mut w = World::new(&c, &inst, 3).unwrap();
        w.start().unwrap();
        for _ in 0..50 {
            w.tick().unwrap();
        }
        if w.fires[0].status == FireStatus::Undetected || w.fires[0].status == FireStatus::Detected {
            let a0 = std::f64::consts::PI * 100.0;
            let expect = grow(a0, 0.05, w.clock).unwrap();
            assert!((w.fires[0].area - expect).abs() < 1e-6 * expect);
        }
    }

    #[test]
    fn no_fires_only_clock_moves() {
        let c = custom(Observability::Full, 1);
        let inst = one_agent(Vec2::new(10.0, 10.0), &[]);
        let mut w = World::new(&c, &inst, 3).unwrap();
        w.start().unwrap();
        w.tick().unwrap();
        assert!((w.clock - 0.1).abs() < 1e-12);
        assert!(w.is_finished());
    }

    #[test]
    fn unreachable_fire_is_flagged_at_max_critical_area() {
        let mut c = custom(Observability::Full, 1);
        c.agents[0].speed = 0.01;
        let inst = Instance {
            fires: vec![FireSetup {
                center: Vec2::new(900.0, 900.0),
                radius: 60.0,
                spread_rate: 0.05,
            }],
            agents: vec![AgentSetup {
                start: Vec2::new(10.0, 10.0),
                capability: QuenchCapability::new(20.0, 0.01).unwrap(),
                sensing_radius: 300.0,
            }],
        };
        let out = World::new(&c, &inst, 1).unwrap().run().unwrap();
        assert!(out.failed);
        let e = out.events.iter().find(|e| e.kind == EventKind::Infeasible).unwrap();
        let a0 = std::f64::consts::PI * 3600.0;
        let t_dead = crate::fire::deadline_time(a0, 0.05, 20.0).seconds().unwrap();
        assert!(e.t >= t_dead - 1e-9 && e.t < t_dead + 0.1 + 1e-9, "{} vs {t_dead}", e.t);
    }

    #[test]
    fn same_seed_same_log() {
        let c = crate::config::preset("homo-po-15").unwrap();
        let a = simulate(&c, 11).unwrap();
        let b = simulate(&c, 11).unwrap();
        assert_eq!(events_to_jsonl(&a.events), events_to_jsonl(&b.events));
    }

    #[test]
    fn every_fire_ends_in_one_state() {
        let c = crate::config::preset("homo-fo-15").unwrap();
        let out = simulate(&c, 5).unwrap();
        for f in &out.fires {
            let quenched = out.events.iter().filter(|e| e.kind == EventKind::Quenched && e.fire == Some(f.id)).count();
            let lost = out.events.iter().filter(|e| e.kind == EventKind::Infeasible && e.fire == Some(f.id)).count();
            let open = out.events.iter().filter(|e| e.kind == EventKind::Final && e.fire == Some(f.id)).count();
            assert_eq!(quenched + lost + open, 1, "fire {}", f.id);
        }
    }

    #[test]
    fn at_most_one_agent_quenches_a_fire() {
        let c = crate::config::preset("homo-fo-25").unwrap();
        let out = simulate(&c, 2).unwrap();
        let mut starts: Vec<FireId> = out
            .events
            .iter()
            .filter(|e| e.kind == EventKind::QuenchStart)
            .filter_map(|e| e.fire)
            .collect();
        let n = starts.len();
        starts.sort();
        starts.dedup();
        assert_eq!(n, starts.len());
    }
}
