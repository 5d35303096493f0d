//! Point-fire growth and quenching.
//!
//! A fire is a circle whose area `a` evolves as
//!
//! ```text
//! da/dt = 2·sqrt(pi)·spread·sqrt(a) − quench
//! ```
//!
//! where `spread` is the radial spread rate (m/s) and `quench` the area quench
//! rate (m²/s) of the single agent acting on it (zero when unattended). In the
//! variable `r = sqrt(a)` the unattended fire grows linearly, and the quenched
//! fire has an implicit closed form which is inverted numerically here.
//!
//! The time-to-zero expression carries `sqrt(a)` inside the logarithm. Printed
//! variants with the bare area there are dimensionally inconsistent with the
//! growth law; the `sqrt(a)` form is the exact integral and is checked against
//! RK4 in the tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;

/// `K = 2·sqrt(pi)`, the perimeter-per-sqrt-area factor of a circle.
pub const PERIMETER_FACTOR: f64 = 3.544_907_701_811_032;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FireStatus {
    Undetected,
    Detected,
    Assigned,
    Quenching,
    Quenched,
    Infeasible,
}

impl FireStatus {
    pub fn is_terminal(self) -> bool {
        matches!(self, FireStatus::Quenched | FireStatus::Infeasible)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FireState {
    pub id: usize,
    pub center: Vec2,
    pub area: f64,
    pub initial_area: f64,
    pub spread_rate: f64,
    pub status: FireStatus,
    pub max_area_seen: f64,
}

impl FireState {
    pub fn new(id: usize, center: Vec2, initial_area: f64, spread_rate: f64) -> Result<Self> {
        if !(initial_area > 0.0) {
            return Err(Error::invalid(format!("fires[{id}].initial_area"), "must be > 0"));
        }
        if !(spread_rate > 0.0) {
            return Err(Error::invalid(format!("fires[{id}].spread_rate"), "must be > 0"));
        }
        Ok(Self {
            id,
            center,
            area: initial_area,
            initial_area,
            spread_rate,
            status: FireStatus::Undetected,
            max_area_seen: initial_area,
        })
    }

    pub fn with_radius(id: usize, center: Vec2, radius: f64, spread_rate: f64) -> Result<Self> {
        Self::new(id, center, std::f64::consts::PI * radius * radius, spread_rate)
    }

    pub fn perimeter(&self) -> f64 {
        perimeter(self.area)
    }

    /// Sets the current area and keeps `max_area_seen` up to date.
    pub fn set_area(&mut self, area: f64) {
        self.area = area.max(0.0);
        if self.area > self.max_area_seen {
            self.max_area_seen = self.area;
        }
    }
}

/// Speed and quench rate of one agent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuenchCapability {
    /// Area quench rate, m²/s.
    pub quench_rate: f64,
    /// Cruise speed, m/s.
    pub speed: f64,
}

impl QuenchCapability {
    pub fn new(quench_rate: f64, speed: f64) -> Result<Self> {
        if !(quench_rate > 0.0) {
            return Err(Error::invalid("quench_rate", "must be > 0"));
        }
        if !(speed > 0.0) {
            return Err(Error::invalid("speed", "must be > 0"));
        }
        Ok(Self { quench_rate, speed })
    }
}

/// Duration of a quench, or the marker that the fire cannot be put out by a
/// single agent of the given capability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuenchTime {
    Finite(f64),
    Infeasible,
}

impl QuenchTime {
    pub fn finite(self) -> Option<f64> {
        match self {
            QuenchTime::Finite(t) => Some(t),
            QuenchTime::Infeasible => None,
        }
    }

    pub fn is_feasible(self) -> bool {
        matches!(self, QuenchTime::Finite(_))
    }
}

/// Time left before an unattended fire reaches a given critical area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Deadline {
    /// Seconds from the reference instant until the critical area is reached.
    In(f64),
    /// The fire is already at or past the critical area; carries how many
    /// seconds ago that happened (non-negative).
    Passed(f64),
}

impl Deadline {
    pub fn seconds(self) -> Option<f64> {
        match self {
            Deadline::In(t) => Some(t),
            Deadline::Passed(_) => None,
        }
    }
}

pub fn perimeter(area: f64) -> f64 {
    PERIMETER_FACTOR * area.max(0.0).sqrt()
}

fn check_nonneg(field: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be finite and >= 0, got {v}")))
    }
}

/// Area of an unattended fire after `dt` seconds.
pub fn grow(area: f64, spread_rate: f64, dt: f64) -> Result<f64> {
    check_nonneg("area", area)?;
    check_nonneg("dt", dt)?;
    Ok(grow_unchecked(area, spread_rate, dt))
}

#[inline]
pub(crate) fn grow_unchecked(area: f64, spread_rate: f64, dt: f64) -> f64 {
    let r = area.sqrt() + std::f64::consts::PI.sqrt() * spread_rate * dt;
    r * r
}

/// Area at which growth balances the quench rate. Fires below it shrink under
/// quenching; fires at or above it cannot be quenched by that agent alone.
pub fn critical_area(quench_rate: f64, spread_rate: f64) -> Result<f64> {
    if !(spread_rate > 0.0) {
        return Err(Error::invalid("spread_rate", "must be > 0 for a critical area to exist"));
    }
    if !(quench_rate > 0.0) {
        return Err(Error::invalid("quench_rate", "must be > 0"));
    }
    Ok(critical_area_unchecked(quench_rate, spread_rate))
}

#[inline]
pub(crate) fn critical_area_unchecked(quench_rate: f64, spread_rate: f64) -> f64 {
    let r = quench_rate / (PERIMETER_FACTOR * spread_rate);
    r * r
}

/// Time until an unattended fire starting at `initial_area` reaches the
/// critical area of an agent with `quench_rate`.
pub fn deadline_time(initial_area: f64, spread_rate: f64, quench_rate: f64) -> Deadline {
    let crit = critical_area_unchecked(quench_rate, spread_rate);
    let t = (crit.sqrt() - initial_area.max(0.0).sqrt())
        / (spread_rate * std::f64::consts::PI.sqrt());
    if t > 0.0 {
        Deadline::In(t)
    } else {
        Deadline::Passed(-t)
    }
}

/// Time for one agent to extinguish a fire of `area_at_start`.
pub fn quench_time(area_at_start: f64, spread_rate: f64, quench_rate: f64) -> QuenchTime {
    if area_at_start <= 0.0 {
        return QuenchTime::Finite(0.0);
    }
    let c = PERIMETER_FACTOR * spread_rate;
    let r0 = area_at_start.sqrt();
    let margin = quench_rate - c * r0;
    if margin <= 0.0 {
        return QuenchTime::Infeasible;
    }
    if c == 0.0 {
        return QuenchTime::Finite(area_at_start / quench_rate);
    }
    // ln(q / (q − c·r0)) = −ln(1 − c·r0/q)
    let x = c * r0 / quench_rate;
    let t = 2.0 * quench_rate / (c * c) * (-(-x).ln_1p()) - 2.0 * r0 / c;
    // cancellation for tiny x can leave a hair below zero
    QuenchTime::Finite(t.max(0.0))
}

/// Area after `dt` seconds of quenching at `quench_rate` while spreading.
///
/// Clamped at zero once the fire is out. Below the critical area the fire
/// shrinks, above it the fire still grows (more slowly), and exactly at it the
/// area is stationary.
pub fn evolve_under_quench(area: f64, spread_rate: f64, quench_rate: f64, dt: f64) -> Result<f64> {
    check_nonneg("area", area)?;
    check_nonneg("dt", dt)?;
    check_nonneg("quench_rate", quench_rate)?;
    Ok(evolve_unchecked(area, spread_rate, quench_rate, dt))
}

pub(crate) fn evolve_unchecked(area: f64, spread_rate: f64, quench_rate: f64, dt: f64) -> f64 {
    if area <= 0.0 || dt == 0.0 {
        return area.max(0.0);
    }
    if quench_rate == 0.0 {
        return grow_unchecked(area, spread_rate, dt);
    }
    let c = PERIMETER_FACTOR * spread_rate;
    if c == 0.0 {
        return (area - quench_rate * dt).max(0.0);
    }
    let r0 = area.sqrt();
    let gap = c * r0 - quench_rate;
    if gap == 0.0 {
        return area;
    }
    if gap < 0.0 {
        if let QuenchTime::Finite(t_out) = quench_time(area, spread_rate, quench_rate) {
            if dt >= t_out {
                return 0.0;
            }
        }
    }
    // Solve for the change `d` in sqrt-area such that the elapsed time
    //   T(d) = (2/c)·d + (2q/c²)·ln(1 + c·d / (c·r0 − q))
    // equals dt. T is monotone on the bracket.
    let q = quench_rate;
    let elapsed = |d: f64| 2.0 / c * d + 2.0 * q / (c * c) * (c * d / gap).ln_1p();
    let slope = |d: f64| {
        let r = r0 + d;
        2.0 * r / (c * r - q)
    };
    let (mut lo, mut hi) = if gap < 0.0 {
        (-r0, 0.0)
    } else {
        (0.0, 0.5 * c * dt)
    };
    // initial guess from the starting rate of change
    let mut d = ((c - q / r0) * 0.5 * dt).clamp(lo, hi);
    for _ in 0..100 {
        let g = elapsed(d) - dt;
        // T is increasing in d when growing, decreasing when shrinking
        let increasing = gap > 0.0;
        if (g > 0.0) == increasing {
            hi = d;
        } else {
            lo = d;
        }
        let s = slope(d);
        let mut next = d - g / s;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - d).abs() <= 1e-15 * (r0 + 1.0) {
            d = next;
            break;
        }
        d = next;
    }
    let r = (r0 + d).max(0.0);
    r * r
}
