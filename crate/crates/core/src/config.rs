//! Scenario configuration, presets, and per-run instantiation.
//!
//! Configs are JSON. Every field has a default, so `{}` is a valid config
//! describing the 5-agent homogeneous, partially observable, 20-fire
//! scenario on a 1 km × 1 km area.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consensus::{CommGraph, ConsensusConfig};
use crate::error::{Error, Result};
use crate::fire::QuenchCapability;
use crate::geom::{Area, Vec2};
use crate::schedule::CostFunction;
use crate::search::SearchParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observability {
    Full,
    Partial,
}

impl std::str::FromStr for Observability {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "fo" => Ok(Observability::Full),
            "partial" | "po" => Ok(Observability::Partial),
            other => Err(Error::invalid(
                "observability",
                format!("expected full|partial, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TeamPreset {
    Homo,
    Hetero,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub speed: f64,
    pub quench_rate: f64,
    /// Overrides the scenario sensing radius when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensing_radius: Option<f64>,
}

impl AgentSpec {
    pub const fn new(speed: f64, quench_rate: f64) -> Self {
        Self {
            speed,
            quench_rate,
            sensing_radius: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeteroTeam {
    pub high: AgentSpec,
    pub low: AgentSpec,
    /// Number of high-capability agents; the rest are low.
    pub high_count: usize,
}

impl Default for HeteroTeam {
    fn default() -> Self {
        Self {
            high: AgentSpec::new(26.0, 26.0),
            low: AgentSpec::new(16.0, 16.0),
            high_count: 2,
        }
    }
}

fn d_area() -> Area {
    Area::new(1000.0, 1000.0)
}
fn d_fire_count() -> usize {
    20
}
fn d_layout_seed() -> u64 {
    2024
}
fn d_radius_range() -> [f64; 2] {
    [5.0, 15.0]
}
fn d_spread() -> f64 {
    0.075
}
fn d_margin() -> f64 {
    50.0
}
fn d_team() -> TeamPreset {
    TeamPreset::Homo
}
fn d_agent_count() -> usize {
    5
}
fn d_homo() -> AgentSpec {
    AgentSpec::new(20.0, 20.0)
}
fn d_sensing() -> f64 {
    300.0
}
fn d_obs() -> Observability {
    Observability::Partial
}
fn d_cost() -> CostFunction {
    CostFunction::Dpmc
}
fn d_dt() -> f64 {
    0.1
}
fn d_horizon() -> f64 {
    7200.0
}
fn d_seed() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default = "d_area")]
    pub area: Area,
    /// Ignored when `fire_centers` is given.
    #[serde(default = "d_fire_count")]
    pub fire_count: usize,
    /// Fixed fire centers; drawn once from `layout_seed` when absent.
    #[serde(default)]
    pub fire_centers: Option<Vec<Vec2>>,
    /// Fixed initial radii; drawn per run from `radius_range` when absent.
    #[serde(default)]
    pub fire_radii: Option<Vec<f64>>,
    #[serde(default = "d_layout_seed")]
    pub layout_seed: u64,
    /// Minimum distance of generated fire centers from the area edge, m.
    #[serde(default = "d_margin")]
    pub layout_margin: f64,
    #[serde(default = "d_radius_range")]
    pub radius_range: [f64; 2],
    /// Radial spread rate, m/s, shared by all fires.
    #[serde(default = "d_spread")]
    pub spread_rate: f64,
    #[serde(default = "d_team")]
    pub team: TeamPreset,
    #[serde(default = "d_agent_count")]
    pub agent_count: usize,
    #[serde(default = "d_homo")]
    pub homo: AgentSpec,
    #[serde(default)]
    pub hetero: HeteroTeam,
    /// Agent list for `team = custom`.
    #[serde(default)]
    pub agents: Vec<AgentSpec>,
    /// Fixed agent start positions; uniform over the area per run when absent.
    #[serde(default)]
    pub agent_starts: Option<Vec<Vec2>>,
    #[serde(default = "d_sensing")]
    pub sensing_radius: f64,
    #[serde(default = "d_obs")]
    pub observability: Observability,
    #[serde(default = "d_cost")]
    pub cost: CostFunction,
    /// Defaults to `ConsensusConfig::for_team(agent count)`.
    #[serde(default)]
    pub consensus: Option<ConsensusConfig>,
    #[serde(default)]
    pub search: SearchParams,
    #[serde(default = "d_dt")]
    pub dt: f64,
    #[serde(default = "d_horizon")]
    pub horizon: f64,
    #[serde(default = "d_seed")]
    pub seed: u64,
    /// Poisson arrival rate of new fires, 1/s.
    #[serde(default)]
    pub popup_rate: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults deserialize")
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn team_specs(&self) -> Vec<AgentSpec> {
        match self.team {
            TeamPreset::Homo => vec![self.homo; self.agent_count],
            TeamPreset::Hetero => {
                let high = self.hetero.high_count.min(self.agent_count);
                (0..self.agent_count)
                    .map(|i| if i < high { self.hetero.high } else { self.hetero.low })
                    .collect()
            }
            TeamPreset::Custom => self.agents.clone(),
        }
    }

    pub fn consensus_config(&self) -> ConsensusConfig {
        self.consensus
            .clone()
            .unwrap_or_else(|| ConsensusConfig::for_team(self.team_specs().len()))
    }

    pub fn fire_total(&self) -> usize {
        self.fire_centers.as_ref().map_or(self.fire_count, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |field: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(field, format!("must be positive, got {v}")))
            }
        };
        pos("area.width", self.area.width)?;
        pos("area.height", self.area.height)?;
        pos("spread_rate", self.spread_rate)?;
        pos("sensing_radius", self.sensing_radius)?;
        pos("dt", self.dt)?;
        pos("horizon", self.horizon)?;
        pos("radius_range[0]", self.radius_range[0])?;
        pos("radius_range[1]", self.radius_range[1])?;
        if self.radius_range[0] > self.radius_range[1] {
            return Err(Error::invalid("radius_range", "min exceeds max"));
        }
        if !(self.popup_rate >= 0.0) {
            return Err(Error::invalid("popup_rate", "must be >= 0"));
        }
        if self.layout_margin < 0.0
            || 2.0 * self.layout_margin >= self.area.width.min(self.area.height)
        {
            return Err(Error::invalid("layout_margin", "must leave room inside the area"));
        }
        let specs = self.team_specs();
        if specs.is_empty() {
            return Err(Error::invalid(
                if self.team == TeamPreset::Custom { "agents" } else { "agent_count" },
                "team is empty",
            ));
        }
        let list = match self.team {
            TeamPreset::Homo => "homo",
            TeamPreset::Hetero => "hetero",
            TeamPreset::Custom => "agents",
        };
        for (i, a) in specs.iter().enumerate() {
            pos(&format!("{list}[{i}].speed"), a.speed)?;
            pos(&format!("{list}[{i}].quench_rate"), a.quench_rate)?;
            if let Some(r) = a.sensing_radius {
                pos(&format!("{list}[{i}].sensing_radius"), r)?;
            }
        }
        if let Some(c) = &self.fire_centers {
            for (i, p) in c.iter().enumerate() {
                if !self.area.contains(*p) {
                    return Err(Error::invalid(format!("fire_centers[{i}]"), "outside the area"));
                }
            }
        }
        if let Some(r) = &self.fire_radii {
            if r.len() != self.fire_total() {
                return Err(Error::invalid("fire_radii", "length must match the fire count"));
            }
            for (i, &v) in r.iter().enumerate() {
                pos(&format!("fire_radii[{i}]"), v)?;
            }
        }
        if let Some(s) = &self.agent_starts {
            if s.len() != specs.len() {
                return Err(Error::invalid("agent_starts", "length must match the team size"));
            }
            for (i, p) in s.iter().enumerate() {
                if !self.area.contains(*p) {
                    return Err(Error::invalid(format!("agent_starts[{i}]"), "outside the area"));
                }
            }
        }
        let cc = self.consensus_config();
        cc.validate()?;
        if let CommGraph::Adjacency(m) = &cc.comm_graph {
            if m.len() != specs.len() || m.iter().any(|r| r.len() != specs.len()) {
                return Err(Error::invalid("consensus.comm_graph", "adjacency must be m × m"));
            }
        }
        let sp = &self.search;
        pos("search.length_scale", sp.length_scale)?;
        pos("search.levy_alpha", sp.levy_alpha)?;
        pos("search.levy_min_step", sp.levy_min_step)?;
        pos("search.max_leg", sp.max_leg)?;
        pos("search.brownian_sigma", sp.brownian_sigma)?;
        pos("search.directional_sigma", sp.directional_sigma)?;
        pos("search.directional_heading_sigma", sp.directional_heading_sigma)?;
        Ok(())
    }

    /// Fire centers, fixed or drawn from `layout_seed`.
    pub fn fire_layout(&self) -> Vec<Vec2> {
        if let Some(c) = &self.fire_centers {
            return c.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.layout_seed);
        let m = self.layout_margin;
        (0..self.fire_count)
            .map(|_| {
                Vec2::new(
                    rng.random_range(m..self.area.width - m),
                    rng.random_range(m..self.area.height - m),
                )
            })
            .collect()
    }

    /// Draws everything that varies between Monte-Carlo runs.
    pub fn instantiate(&self, run_seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
        rng.set_stream(INSTANCE_STREAM);
        let centers = self.fire_layout();
        let radii = match &self.fire_radii {
            Some(r) => r.clone(),
            None => centers
                .iter()
                .map(|_| rng.random_range(self.radius_range[0]..=self.radius_range[1]))
                .collect(),
        };
        let specs = self.team_specs();
        let starts = match &self.agent_starts {
            Some(s) => s.clone(),
            None => specs
                .iter()
                .map(|_| {
                    Vec2::new(
                        rng.random_range(0.0..=self.area.width),
                        rng.random_range(0.0..=self.area.height),
                    )
                })
                .collect(),
        };
        Instance {
            fires: centers
                .into_iter()
                .zip(radii)
                .map(|(center, radius)| FireSetup {
                    center,
                    radius,
                    spread_rate: self.spread_rate,
                })
                .collect(),
            agents: specs
                .into_iter()
                .zip(starts)
                .map(|(s, start)| AgentSetup {
                    start,
                    capability: QuenchCapability {
                        quench_rate: s.quench_rate,
                        speed: s.speed,
                    },
                    sensing_radius: s.sensing_radius.unwrap_or(self.sensing_radius),
                })
                .collect(),
        }
    }
}

/// Stream id used for the per-run instance draw; agents use their index.
pub(crate) const INSTANCE_STREAM: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FireSetup {
    pub center: Vec2,
    pub radius: f64,
    pub spread_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSetup {
    pub start: Vec2,
    pub capability: QuenchCapability,
    pub sensing_radius: f64,
}

/// A concrete draw of a scenario: fires and agents for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub fires: Vec<FireSetup>,
    pub agents: Vec<AgentSetup>,
}

/// Reads and validates a JSON config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let cfg = ScenarioConfig::from_json(&text).map_err(|source| Error::ConfigParse {
        path: path.to_path_buf(),
        source,
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn save_config(cfg: &ScenarioConfig, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, cfg.to_json()).map_err(|e| Error::io(path, e))
}

/// Names accepted by [`preset`].
pub fn preset_names() -> Vec<String> {
    let mut v = Vec::new();
    for team in ["homo", "hetero"] {
        for obs in ["fo", "po"] {
            for n in [15, 20, 25] {
                v.push(format!("{team}-{obs}-{n}"));
            }
        }
    }
    v.push("demo-po".into());
    v.push("demo-fo".into());
    v
}

/// Built-in scenarios: `{homo,hetero}-{fo,po}-{15,20,25}` and the six-fire,
/// two-agent walkthrough `demo-{po,fo}`.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    if let Some(obs) = name.strip_prefix("demo-") {
        let mut c = demo_case();
        c.observability = obs.parse()?;
        c.name = name.to_string();
        return Ok(c);
    }
    let parts: Vec<&str> = name.split('-').collect();
    let [team, obs, n] = parts.as_slice() else {
        return Err(Error::UnknownPreset(name.to_string()));
    };
    let team = match *team {
        "homo" => TeamPreset::Homo,
        "hetero" => TeamPreset::Hetero,
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    let observability = match *obs {
        "fo" => Observability::Full,
        "po" => Observability::Partial,
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    let fire_count: usize = n
        .parse()
        .map_err(|_| Error::UnknownPreset(name.to_string()))?;
    Ok(ScenarioConfig {
        name: name.to_string(),
        team,
        observability,
        fire_count,
        ..ScenarioConfig::default()
    })
}

/// Six fires and two agents; the first agent is faster and quenches faster.
pub fn demo_case() -> ScenarioConfig {
    ScenarioConfig {
        name: "demo".into(),
        fire_centers: Some(vec![
            Vec2::new(100.0, 400.0),
            Vec2::new(200.0, 600.0),
            Vec2::new(300.0, 400.0),
            Vec2::new(480.0, 480.0),
            Vec2::new(600.0, 700.0),
            Vec2::new(800.0, 200.0),
        ]),
        fire_radii: Some(vec![5.0, 50.0, 15.0, 15.0, 10.0, 5.0]),
        team: TeamPreset::Custom,
        agents: vec![AgentSpec::new(26.0, 26.0), AgentSpec::new(16.0, 16.0)],
        agent_starts: Some(vec![Vec2::new(200.0, 385.0), Vec2::new(700.0, 610.0)]),
        ..ScenarioConfig::default()
    }
}
