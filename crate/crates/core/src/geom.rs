use serde::{Deserialize, Serialize};

/// A point or displacement in the mission plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(length: f64, heading: f64) -> Self {
        Self::new(length * heading.cos(), length * heading.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn heading(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn scale(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

/// Axis-aligned rectangular mission area `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Area {
    pub width: f64,
    pub height: f64,
}

impl Area {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    pub fn clamp(&self, p: Vec2) -> Vec2 {
        Vec2::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.height))
    }

    /// Moves `from` by `delta`, mirroring off the walls. Returns the new
    /// position and the displacement direction after reflection.
    pub fn reflect_move(&self, from: Vec2, delta: Vec2) -> (Vec2, Vec2) {
        let (x, fx) = reflect_axis(from.x + delta.x, self.width);
        let (y, fy) = reflect_axis(from.y + delta.y, self.height);
        (Vec2::new(x, y), Vec2::new(delta.x * fx, delta.y * fy))
    }

    pub fn diagonal(&self) -> f64 {
        self.width.hypot(self.height)
    }
}

fn reflect_axis(mut v: f64, max: f64) -> (f64, f64) {
    let mut flip = 1.0;
    // a single step never exceeds the area in practice; loop for safety on long legs
    for _ in 0..8 {
        if v < 0.0 {
            v = -v;
            flip = -flip;
        } else if v > max {
            v = 2.0 * max - v;
            flip = -flip;
        } else {
            break;
        }
    }
    (v.clamp(0.0, max), flip)
}
