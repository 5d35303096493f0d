//! Decentralized auction-based sequential planning for multi-UAV wildfire
//! mitigation.
//!
//! Fires are circular point fires that grow at a constant radial spread rate.
//! A single agent can only put out a fire while it is below that agent's
//! critical area, which gives every fire a per-agent deadline. Agents build
//! paths greedily by bidding marginal path-score increases
//! ([`planner`]), resolve conflicting claims by exchanging bids
//! ([`consensus`]), and search for unseen fires with a temperature-driven
//! Levy/Brownian walk ([`search`]). [`sim`] runs the whole mission on a fixed
//! time step and [`harness`] drives Monte-Carlo batches over it.
//!
//! Modules, bottom up:
//!
//! - [`fire`]: growth, quench time, critical area and deadlines.
//! - [`schedule`]: per-path start/quench/completion times and the two scores.
//! - [`planner`]: greedy bundle construction for one agent.
//! - [`consensus`]: bid exchange, task release, convergence, deadlock removal.
//! - [`search`]: temperature field, search modes, detection.
//! - [`sim`]: time-stepped world with replanning.
//! - [`metrics`]: per-run indices and aggregation.
//! - [`config`] and [`harness`]: scenarios, presets, batches and sweeps.
//! - [`oracle`]: RK4 and exhaustive-assignment references.

pub mod config;
pub mod consensus;
pub mod error;
pub mod fire;
pub mod geom;
pub mod harness;
pub mod metrics;
pub mod oracle;
pub mod planner;
pub mod schedule;
pub mod search;
pub mod sim;

pub use error::{Error, Result};
pub use geom::{Area, Vec2};
pub use schedule::{CostFunction, Score};
