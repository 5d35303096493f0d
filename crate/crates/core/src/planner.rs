//! Greedy auction-based bundle construction for a single agent.
//!
//! Each agent keeps four vectors: the bundle (tasks in the order they were
//! won), the path (the same tasks in execution order), the best known bid per
//! task and the agent believed to hold it. Bids are marginal path-score
//! increases, so lower wins.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::schedule::{
    marginal_insertion, AgentId, AgentSnapshot, CostFunction, FireBook, FireId, Score,
};

/// Replicated per-task auction state: winning bid `y` and winner `z`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BidTable {
    bids: Vec<Score>,
    winners: Vec<Option<AgentId>>,
}

impl BidTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Winning bid for `task`; unheard tasks carry `Score::Infeasible`.
    pub fn bid(&self, task: FireId) -> Score {
        self.bids.get(task).copied().unwrap_or(Score::Infeasible)
    }

    pub fn winner(&self, task: FireId) -> Option<AgentId> {
        self.winners.get(task).copied().flatten()
    }

    pub fn set(&mut self, task: FireId, bid: Score, winner: Option<AgentId>) {
        if self.bids.len() <= task {
            self.bids.resize(task + 1, Score::Infeasible);
            self.winners.resize(task + 1, None);
        }
        self.bids[task] = bid;
        self.winners[task] = winner;
    }

    pub fn reset(&mut self, task: FireId) {
        if task < self.bids.len() {
            self.bids[task] = Score::Infeasible;
            self.winners[task] = None;
        }
    }

    /// One past the largest task id with an entry.
    pub fn len(&self) -> usize {
        self.bids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.winners.iter().all(Option::is_none)
    }

    /// Winner map with trailing unassigned entries dropped, so that two tables
    /// that agree on every task compare equal regardless of their length.
    pub fn winners(&self) -> &[Option<AgentId>] {
        let end = self
            .winners
            .iter()
            .rposition(Option::is_some)
            .map_or(0, |i| i + 1);
        &self.winners[..end]
    }

    pub fn entries(&self) -> impl Iterator<Item = (FireId, Score, Option<AgentId>)> + '_ {
        self.bids
            .iter()
            .zip(&self.winners)
            .enumerate()
            .filter(|(_, (b, w))| w.is_some() || b.is_feasible())
            .map(|(j, (&b, &w))| (j, b, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannerState {
    pub agent: AgentId,
    /// Tasks in the order they were added.
    pub bundle: Vec<FireId>,
    /// Tasks in execution order.
    pub path: Vec<FireId>,
    pub table: BidTable,
}

impl PlannerState {
    pub fn new(agent: AgentId) -> Self {
        Self {
            agent,
            bundle: Vec::new(),
            path: Vec::new(),
            table: BidTable::new(),
        }
    }

    /// Adds tasks from `detected` greedily until none can outbid the known
    /// winner (or, with `single_add`, after at most one addition). Returns the
    /// number of tasks added.
    ///
    /// A task is a candidate only if its marginal cost is strictly below the
    /// winning bid this agent knows of. Among candidates the cheapest is
    /// appended to the bundle and inserted into the path at its best position;
    /// equal costs go to the lowest task id.
    pub fn build_bundle(
        &mut self,
        agent: &AgentSnapshot,
        detected: &[FireId],
        fires: &FireBook,
        cost: CostFunction,
        single_add: bool,
    ) -> Result<usize> {
        let mut added = 0;
        loop {
            let mut best: Option<(Score, FireId, usize)> = None;
            for &j in detected {
                if self.bundle.contains(&j) || !fires.contains(j) {
                    continue;
                }
                let ins = marginal_insertion(agent, &self.path, j, fires, cost)?;
                let Some(pos) = ins.position else { continue };
                if ins.cost >= self.table.bid(j) {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((c, id, _)) => ins.cost < c || (ins.cost == c && j < id),
                };
                if better {
                    best = Some((ins.cost, j, pos));
                }
            }
            let Some((c, j, pos)) = best else { break };
            self.bundle.push(j);
            self.path.insert(pos, j);
            self.table.set(j, c, Some(self.agent));
            added += 1;
            if single_add {
                break;
            }
        }
        Ok(added)
    }

    pub fn owns(&self, task: FireId) -> bool {
        self.table.winner(task) == Some(self.agent)
    }
}
