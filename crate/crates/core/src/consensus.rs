//! Synchronous bid exchange and conflict resolution between agents.
//!
//! Every round each agent extends its bundle, then all agents exchange their
//! bid tables with their neighbours, apply the merge rules, and drop any
//! bundled task they lost together with every task bundled after it (those
//! bids were computed on a path that no longer exists). The process has
//! converged once every agent holds the same winner map and that map has
//! been observed unchanged for `w1` consecutive rounds. If that never happens
//! within `max_iters` rounds, `w2` extra rounds are run and the round whose
//! conflict-free assignment leaves the fewest tasks uncovered is kept.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planner::{BidTable, PlannerState};
use crate::schedule::{AgentId, AgentSnapshot, CostFunction, FireBook, FireId, Score};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CommGraph {
    #[default]
    Full,
    /// Symmetric adjacency matrix indexed by agent position.
    Adjacency(Vec<Vec<bool>>),
}

impl CommGraph {
    pub fn connected(&self, i: usize, k: usize) -> bool {
        if i == k {
            return false;
        }
        match self {
            CommGraph::Full => true,
            CommGraph::Adjacency(m) => m.get(i).and_then(|r| r.get(k)).copied().unwrap_or(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsensusConfig {
    #[serde(default)]
    pub comm_graph: CommGraph,
    pub w1: usize,
    pub w2: usize,
    pub max_iters: usize,
    #[serde(default)]
    pub single_add_per_round: bool,
    #[serde(default)]
    pub share_detections: bool,
}

impl ConsensusConfig {
    /// `w1 = 3`, `w2 = m`, `max_iters = 3m` for a team of `m` agents.
    pub fn for_team(m: usize) -> Self {
        let m = m.max(1);
        Self {
            comm_graph: CommGraph::Full,
            w1: 3,
            w2: m,
            max_iters: 3 * m,
            single_add_per_round: false,
            share_detections: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.w1 < 1 {
            return Err(Error::invalid("consensus.w1", "must be >= 1"));
        }
        if self.w2 < 1 {
            return Err(Error::invalid("consensus.w2", "must be >= 1"));
        }
        if self.max_iters < self.w1 {
            return Err(Error::invalid("consensus.max_iters", "must be >= w1"));
        }
        Ok(())
    }
}

/// Result of one consensus run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentOutcome {
    /// Conflict-free execution order per agent, indexed like the input agents.
    pub paths: Vec<Vec<FireId>>,
    pub converged: bool,
    /// Round in which the final winner map first appeared (converged runs),
    /// or the round selected by deadlock removal.
    pub iterations_used: usize,
    pub rounds_executed: usize,
    pub deadlock_resolved: bool,
    /// Tasks detected by some agent that ended up on no path.
    pub infeasible_task_count: usize,
    pub states: Vec<PlannerState>,
}

impl AssignmentOutcome {
    pub fn is_conflict_free(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.paths.iter().flatten().all(|j| seen.insert(*j))
    }
}

/// One record per agent per round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub round: usize,
    pub agent: AgentId,
    pub bundle: Vec<FireId>,
    pub path: Vec<FireId>,
    pub bids: Vec<(FireId, Score, Option<AgentId>)>,
}

/// Applies the conflict-resolution table to every task in `sender`'s table.
///
/// With `i` the receiver and `k` the sender:
///
/// | sender thinks | receiver thinks     | action |
/// |---------------|---------------------|--------|
/// | k             | k, or none          | update |
/// | k             | other, lower bid    | update |
/// | i             | k                   | reset  |
/// | m ∉ {i, k}    | k                   | reset  |
/// | none          | k                   | update |
///
/// Every other combination leaves the receiver untouched. On an exact bid
/// tie in the third row the lower agent id wins.
pub fn merge_messages(receiver: &mut PlannerState, sender: AgentId, sender_table: &BidTable) {
    let i = receiver.agent;
    let k = sender;
    let n = sender_table.len().max(receiver.table.len());
    for j in 0..n {
        let zk = sender_table.winner(j);
        let yk = sender_table.bid(j);
        let zi = receiver.table.winner(j);
        let yi = receiver.table.bid(j);
        let update = |r: &mut PlannerState| r.table.set(j, yk, zk);
        match zk {
            Some(w) if w == k => {
                let outbids = match zi {
                    Some(cur) => yk < yi || (yk == yi && k < cur),
                    None => true,
                };
                if zi == Some(k) || zi.is_none() || outbids {
                    update(receiver);
                }
            }
            Some(w) if w == i => {
                if zi == Some(k) {
                    receiver.table.reset(j);
                }
            }
            Some(_) => {
                if zi == Some(k) {
                    receiver.table.reset(j);
                }
            }
            None => {
                if zi == Some(k) {
                    update(receiver);
                }
            }
        }
    }
}

/// Drops the first bundled task this agent no longer wins and every task
/// bundled after it. Returns the removed tasks in bundle order.
pub fn release_lost_tasks(state: &mut PlannerState) -> Vec<FireId> {
    let Some(cut) = state.bundle.iter().position(|&j| !state.owns(j)) else {
        return Vec::new();
    };
    let removed: Vec<FireId> = state.bundle.drain(cut..).collect();
    state.path.retain(|j| !removed.contains(j));
    for &j in &removed {
        if state.owns(j) {
            state.table.reset(j);
        }
    }
    removed
}

/// Input for one agent to [`run_rounds`].
#[derive(Debug, Clone)]
pub struct AgentPlan {
    pub snapshot: AgentSnapshot,
    /// Tasks this agent may bid on.
    pub detected: Vec<FireId>,
    pub state: PlannerState,
}

impl AgentPlan {
    pub fn fresh(snapshot: AgentSnapshot, detected: Vec<FireId>) -> Self {
        let state = PlannerState::new(snapshot.id);
        Self {
            snapshot,
            detected,
            state,
        }
    }
}

/// Runs build/exchange/release rounds until convergence or deadlock removal.
pub fn run_rounds(
    mut agents: Vec<AgentPlan>,
    fires: &FireBook,
    cost: CostFunction,
    cfg: &ConsensusConfig,
    mut trace: Option<&mut Vec<RoundTrace>>,
) -> Result<AssignmentOutcome> {
    cfg.validate()?;
    let all_detected: Vec<FireId> = {
        let mut v: Vec<FireId> = agents
            .iter()
            .flat_map(|a| a.detected.iter().copied())
            .filter(|&j| fires.contains(j))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };

    let mut stable = 0usize;
    let mut last_agreed: Option<Vec<Option<AgentId>>> = None;
    let mut first_seen_round = 0usize;
    let mut round = 0usize;

    while round < cfg.max_iters {
        round += 1;
        let before: Vec<PlannerState> = agents.iter().map(|a| a.state.clone()).collect();
        exchange_round(&mut agents, fires, cost, cfg)?;
        record(&mut trace, round, &agents);

        let agreed = agreed_winners(&agents);
        match (&agreed, &last_agreed) {
            (Some(z), Some(prev)) if z == prev => stable += 1,
            (Some(_), _) => {
                stable = 1;
                first_seen_round = round;
            }
            (None, _) => stable = 0,
        }
        last_agreed = agreed;
        if stable >= cfg.w1 {
            return Ok(finish(agents, &all_detected, true, first_seen_round, round, false));
        }

        // A round that changed nothing repeats forever; fast-forward it.
        let stationary = trace.is_none()
            && agents.iter().zip(&before).all(|(a, b)| &a.state == b);
        if stationary {
            if last_agreed.is_some() && round + (cfg.w1 - stable) <= cfg.max_iters {
                let done = round + (cfg.w1 - stable);
                return Ok(finish(agents, &all_detected, true, first_seen_round, done, false));
            }
            let paths = resolve_claims(&agents);
            let uncovered = uncovered(&paths, &all_detected);
            let mut out = finish(
                agents,
                &all_detected,
                false,
                cfg.max_iters + 1,
                cfg.max_iters + cfg.w2,
                true,
            );
            out.paths = paths;
            out.infeasible_task_count = uncovered;
            return Ok(out);
        }
    }

    // deadlock removal
    let mut best: Option<(usize, usize, Vec<Vec<FireId>>, Vec<PlannerState>)> = None;
    for _ in 0..cfg.w2 {
        round += 1;
        exchange_round(&mut agents, fires, cost, cfg)?;
        record(&mut trace, round, &agents);
        let paths = resolve_claims(&agents);
        let unc = uncovered(&paths, &all_detected);
        if best.as_ref().is_none_or(|(u, ..)| unc < *u) {
            let states = agents.iter().map(|a| a.state.clone()).collect();
            best = Some((unc, round, paths, states));
        }
    }
    let (unc, at, paths, states) = best.expect("w2 >= 1");
    Ok(AssignmentOutcome {
        paths,
        converged: false,
        iterations_used: at,
        rounds_executed: round,
        deadlock_resolved: true,
        infeasible_task_count: unc,
        states,
    })
}

fn exchange_round(
    agents: &mut [AgentPlan],
    fires: &FireBook,
    cost: CostFunction,
    cfg: &ConsensusConfig,
) -> Result<()> {
    for a in agents.iter_mut() {
        a.state.build_bundle(
            &a.snapshot,
            &a.detected,
            fires,
            cost,
            cfg.single_add_per_round,
        )?;
    }
    let tables: Vec<BidTable> = agents.iter().map(|a| a.state.table.clone()).collect();
    let sensed: Vec<Vec<FireId>> = if cfg.share_detections {
        agents.iter().map(|a| a.detected.clone()).collect()
    } else {
        Vec::new()
    };
    for i in 0..agents.len() {
        for k in 0..agents.len() {
            if !cfg.comm_graph.connected(i, k) {
                continue;
            }
            let sender = agents[k].snapshot.id;
            merge_messages(&mut agents[i].state, sender, &tables[k]);
            if cfg.share_detections {
                for &j in &sensed[k] {
                    if !agents[i].detected.contains(&j) {
                        agents[i].detected.push(j);
                    }
                }
            }
        }
    }
    for a in agents.iter_mut() {
        release_lost_tasks(&mut a.state);
    }
    Ok(())
}

fn record(trace: &mut Option<&mut Vec<RoundTrace>>, round: usize, agents: &[AgentPlan]) {
    if let Some(t) = trace {
        for a in agents {
            t.push(RoundTrace {
                round,
                agent: a.snapshot.id,
                bundle: a.state.bundle.clone(),
                path: a.state.path.clone(),
                bids: a.state.table.entries().collect(),
            });
        }
    }
}

fn agreed_winners(agents: &[AgentPlan]) -> Option<Vec<Option<AgentId>>> {
    let first = agents.first()?.state.table.winners();
    agents
        .iter()
        .all(|a| a.state.table.winners() == first)
        .then(|| first.to_vec())
}

/// Conflict-free paths from the agents' current claims: a task claimed by
/// several agents stays with the lowest own bid (then lowest agent id) and is
/// removed from the others' paths. Removal only brings later tasks forward,
/// so feasibility is preserved.
fn resolve_claims(agents: &[AgentPlan]) -> Vec<Vec<FireId>> {
    let mut holder: std::collections::HashMap<FireId, (Score, AgentId)> = Default::default();
    for a in agents {
        for &j in &a.state.bundle {
            let cand = (a.state.table.bid(j), a.snapshot.id);
            holder
                .entry(j)
                .and_modify(|h| {
                    if cand < *h {
                        *h = cand
                    }
                })
                .or_insert(cand);
        }
    }
    agents
        .iter()
        .map(|a| {
            a.state
                .path
                .iter()
                .copied()
                .filter(|j| holder.get(j).map(|h| h.1) == Some(a.snapshot.id))
                .collect()
        })
        .collect()
}

fn uncovered(paths: &[Vec<FireId>], detected: &[FireId]) -> usize {
    let on_path: std::collections::HashSet<FireId> = paths.iter().flatten().copied().collect();
    detected.iter().filter(|j| !on_path.contains(j)).count()
}

fn finish(
    agents: Vec<AgentPlan>,
    detected: &[FireId],
    converged: bool,
    iterations_used: usize,
    rounds_executed: usize,
    deadlock_resolved: bool,
) -> AssignmentOutcome {
    let paths = resolve_claims(&agents);
    debug_assert!(!converged || agents.iter().zip(&paths).all(|(a, p)| &a.state.path == p));
    let infeasible_task_count = uncovered(&paths, detected);
    AssignmentOutcome {
        paths,
        converged,
        iterations_used,
        rounds_executed,
        deadlock_resolved,
        infeasible_task_count,
        states: agents.into_iter().map(|a| a.state).collect(),
    }
}
