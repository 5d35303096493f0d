//! Temperature-driven stochastic search for agents with nothing to do.
//!
//! Cold readings trigger heavy-tailed Levy exploration. Above the threshold
//! the agent switches to Brownian exploitation, and when the field also has a
//! usable gradient it takes short Brownian steps biased up the gradient. The
//! temperature field is a simple stand-in: every burning fire adds an
//! exponentially decaying plume proportional to its area.

use rand::Rng;
use rand_distr::{Distribution, Normal, Pareto};
use serde::{Deserialize, Serialize};

use crate::geom::{Area, Vec2};
use crate::schedule::FireId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    /// Ambient temperature.
    pub ambient: f64,
    /// Plume amplitude per m² of burning area.
    pub amplitude_per_area: f64,
    /// Plume decay length, m.
    pub length_scale: f64,
    /// Threshold above ambient, as a fraction of the amplitude of a fire of
    /// `reference_area`.
    pub threshold_fraction: f64,
    pub reference_area: f64,
    /// Tail exponent of the Levy step-length distribution.
    pub levy_alpha: f64,
    /// Minimum Levy step, m.
    pub levy_min_step: f64,
    /// Longest single leg, m; Levy draws beyond it are truncated.
    pub max_leg: f64,
    /// Standard deviation of Brownian step length, m.
    pub brownian_sigma: f64,
    /// Standard deviation of directional step length, m.
    pub directional_sigma: f64,
    /// Heading noise around the gradient direction, rad.
    pub directional_heading_sigma: f64,
    /// Gradient magnitudes at or below this count as flat.
    pub gradient_epsilon: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            ambient: 25.0,
            amplitude_per_area: 0.05,
            length_scale: 150.0,
            threshold_fraction: 0.2,
            reference_area: std::f64::consts::PI * 15.0 * 15.0,
            levy_alpha: 1.5,
            levy_min_step: 20.0,
            max_leg: 1_000.0,
            brownian_sigma: 40.0,
            directional_sigma: 15.0,
            directional_heading_sigma: 0.35,
            gradient_epsilon: 1e-6,
        }
    }
}

impl SearchParams {
    pub fn threshold(&self) -> f64 {
        self.ambient + self.threshold_fraction * self.amplitude_per_area * self.reference_area
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plume {
    pub center: Vec2,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemperatureField {
    pub ambient: f64,
    pub length_scale: f64,
    pub plumes: Vec<Plume>,
}

impl TemperatureField {
    /// Field of the given fires, `(center, area)` pairs.
    pub fn from_fires(params: &SearchParams, fires: impl IntoIterator<Item = (Vec2, f64)>) -> Self {
        Self {
            ambient: params.ambient,
            length_scale: params.length_scale,
            plumes: fires
                .into_iter()
                .filter(|&(_, a)| a > 0.0)
                .map(|(center, area)| Plume {
                    center,
                    amplitude: params.amplitude_per_area * area,
                })
                .collect(),
        }
    }
}

/// Temperature and its spatial gradient at `position` (clamped into `area`).
pub fn sample_temperature(field: &TemperatureField, area: &Area, position: Vec2) -> (f64, Vec2) {
    let p = area.clamp(position);
    let mut t = field.ambient;
    let mut grad = Vec2::ZERO;
    for plume in &field.plumes {
        let d = p.distance(plume.center);
        let w = plume.amplitude * (-d / field.length_scale).exp();
        t += w;
        if d > 0.0 {
            // d/dp exp(-|p-c|/l) = -(p-c)/(l·|p-c|)·exp(..)
            grad += (p - plume.center).scale(-w / (field.length_scale * d));
        }
    }
    (t, grad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Levy,
    Brownian,
    Directional,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchState {
    pub mode: SearchMode,
    /// Current leg heading, rad.
    pub heading: f64,
    /// Distance left on the current leg, m.
    pub leg_remaining: f64,
}

impl Default for SearchState {
    fn default() -> Self {
        Self {
            mode: SearchMode::Levy,
            heading: 0.0,
            leg_remaining: 0.0,
        }
    }
}

/// Mode implied by a temperature reading.
pub fn select_mode(params: &SearchParams, temperature: f64, gradient: Vec2) -> SearchMode {
    if temperature < params.threshold() {
        SearchMode::Levy
    } else if gradient.norm() > params.gradient_epsilon {
        SearchMode::Directional
    } else {
        SearchMode::Brownian
    }
}

/// One Levy step length: Pareto with scale `min_step` and shape `alpha`.
pub fn levy_step_length<R: Rng + ?Sized>(rng: &mut R, min_step: f64, alpha: f64) -> f64 {
    Pareto::new(min_step, alpha)
        .expect("levy parameters must be positive")
        .sample(rng)
}

fn sample_leg<R: Rng + ?Sized>(
    params: &SearchParams,
    mode: SearchMode,
    gradient: Vec2,
    rng: &mut R,
) -> (f64, f64) {
    let uniform_heading = |rng: &mut R| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    match mode {
        SearchMode::Levy => {
            let len = levy_step_length(rng, params.levy_min_step, params.levy_alpha);
            (uniform_heading(rng), len.min(params.max_leg))
        }
        SearchMode::Brownian => {
            let n = Normal::new(0.0, params.brownian_sigma).expect("sigma > 0");
            (uniform_heading(rng), n.sample(rng).abs())
        }
        SearchMode::Directional => {
            let hn = Normal::new(0.0, params.directional_heading_sigma).expect("sigma > 0");
            let ln = Normal::new(0.0, params.directional_sigma).expect("sigma > 0");
            (gradient.heading() + hn.sample(rng), ln.sample(rng).abs())
        }
    }
}

/// Advances a searching agent by one tick.
///
/// A new leg is drawn (and the mode re-evaluated from the reading) whenever
/// the current one is used up. The returned displacement never exceeds
/// `speed * dt`.
pub fn search_step<R: Rng + ?Sized>(
    state: SearchState,
    params: &SearchParams,
    temperature: f64,
    gradient: Vec2,
    speed: f64,
    dt: f64,
    rng: &mut R,
) -> (Vec2, SearchState) {
    let mut s = state;
    if s.leg_remaining <= 0.0 {
        s.mode = select_mode(params, temperature, gradient);
        let (heading, len) = sample_leg(params, s.mode, gradient, rng);
        s.heading = heading;
        s.leg_remaining = len;
    }
    let step = s.leg_remaining.min(speed * dt);
    s.leg_remaining -= step;
    (Vec2::from_polar(step, s.heading), s)
}

/// Fires strictly inside the sensing radius that are not yet in `known`.
pub fn try_detect<'a>(
    position: Vec2,
    sensing_radius: f64,
    fires: impl IntoIterator<Item = (FireId, Vec2)> + 'a,
    known: &'a [FireId],
) -> Vec<FireId> {
    fires
        .into_iter()
        .filter(|(id, c)| position.distance(*c) < sensing_radius && !known.contains(id))
        .map(|(id, _)| id)
        .collect()
}
