use std::ops::{Add, Mul, Neg, Sub};

/// Wraps an angle in degrees into `[0, 360)`.
pub fn normalize_deg(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs
    if wrapped >= 360.0 {
        0.0
    } else {
        wrapped
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (other - self).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Bearing of this vector, counter-clockwise from +x, in `[0, 360)`.
    pub fn bearing_deg(self) -> f64 {
        normalize_deg(self.y.atan2(self.x).to_degrees())
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Box center and heading. The heading is kept in `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxPose {
    pub center: Vec2,
    angle_deg: f64,
}

impl BoxPose {
    pub fn new(center: Vec2, angle_deg: f64) -> Self {
        BoxPose {
            center,
            angle_deg: normalize_deg(angle_deg),
        }
    }

    pub fn at(x: f64, y: f64, angle_deg: f64) -> Self {
        Self::new(Vec2::new(x, y), angle_deg)
    }

    pub fn angle_deg(&self) -> f64 {
        self.angle_deg
    }
}

/// Rectangle footprint of the box; `length` runs along the heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxShape {
    pub length: f64,
    pub width: f64,
}

impl Default for BoxShape {
    fn default() -> Self {
        BoxShape {
            length: 120.0,
            width: 80.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub center: Vec2,
    pub radius: f64,
}

impl Obstacle {
    pub fn new(x: f64, y: f64, radius: f64) -> Self {
        Obstacle {
            center: Vec2::new(x, y),
            radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Goal {
    pub center: Vec2,
    pub radius: f64,
}

impl Default for Goal {
    fn default() -> Self {
        Goal {
            center: Vec2::new(800.0, 700.0),
            radius: 30.0,
        }
    }
}

/// Axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.x_min >= self.x_min
            && other.x_max <= self.x_max
            && other.y_min >= self.y_min
            && other.y_max <= self.y_max
    }

    pub fn is_valid(&self) -> bool {
        self.x_min <= self.x_max && self.y_min <= self.y_max
    }
}
