//! Cartesian geometry for arrays, scatterers and their motion.
//!
//! The frame places the ground projection of the base-station array center at
//! the origin and the initial position of the mobile receiver on the +x axis.
//! All angles are radians and all lengths meters.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (other - self).norm()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(v: [f64; 3]) -> Self {
        Vec3::new(v[0], v[1], v[2])
    }
}

/// Azimuth in (-π, π] and elevation in [-π/2, π/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub azimuth: f64,
    pub elevation: f64,
}

impl AnglePair {
    /// Builds a pair, wrapping the azimuth into (-π, π].
    pub fn new(azimuth: f64, elevation: f64) -> Result<Self> {
        if !azimuth.is_finite() || !elevation.is_finite() {
            return Err(Error::Domain("angles must be finite".into()));
        }
        if elevation.abs() > FRAC_PI_2 {
            return Err(Error::Domain(format!("elevation {elevation} outside [-π/2, π/2]")));
        }
        Ok(Self { azimuth: wrap_azimuth(azimuth), elevation })
    }
}

/// Wraps an angle into (-π, π].
pub fn wrap_azimuth(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Uniform linear array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UlaConfig {
    pub element_count: usize,
    /// Inter-element spacing in meters.
    pub spacing: f64,
    pub azimuth_orientation: f64,
    pub elevation_orientation: f64,
    pub phase_center: Vec3,
}

impl UlaConfig {
    /// Unit vector along the array axis.
    pub fn axis(&self) -> Vec3 {
        let (sa, ca) = self.azimuth_orientation.sin_cos();
        let (se, ce) = self.elevation_orientation.sin_cos();
        Vec3::new(ce * ca, ce * sa, se)
    }

    /// Displacement of a (possibly fractional) element position from the
    /// phase center. Integer positions 1..=M are the physical elements.
    pub fn displacement_at(&self, position: f64) -> Vec3 {
        let coeff = (self.element_count as f64 - 2.0 * position + 1.0) / 2.0;
        self.axis() * (coeff * self.spacing)
    }

    /// Absolute position of element `index` (1-based).
    pub fn element_position(&self, index: usize) -> Result<Vec3> {
        Ok(self.phase_center + element_displacement(self, index)?)
    }
}

/// Displacement of element `index` (1-based) from the array phase center.
pub fn element_displacement(ula: &UlaConfig, index: usize) -> Result<Vec3> {
    if index == 0 || index > ula.element_count {
        return Err(Error::Domain(format!("antenna index {index} outside 1..={}", ula.element_count)));
    }
    Ok(ula.displacement_at(index as f64))
}

/// Unit vector pointing along the given azimuth/elevation.
pub fn unit_direction(angles: AnglePair) -> Vec3 {
    let (sa, ca) = angles.azimuth.sin_cos();
    let (sb, cb) = angles.elevation.sin_cos();
    Vec3::new(cb * ca, cb * sa, sb)
}

/// Angles and length of the segment `from -> to`.
///
/// A target straight above or below `from` has azimuth 0 and elevation ±π/2.
pub fn angles_and_distance(from: Vec3, to: Vec3) -> Result<(AnglePair, f64)> {
    let d = to - from;
    let distance = d.norm();
    if !(distance > 0.0) {
        return Err(Error::DegenerateGeometry(format!("coincident points at ({}, {}, {})", from.x, from.y, from.z)));
    }
    let horizontal = d.x.hypot(d.y);
    let (azimuth, elevation) = if horizontal == 0.0 {
        (0.0, FRAC_PI_2.copysign(d.z))
    } else {
        (wrap_azimuth(d.y.atan2(d.x)), d.z.atan2(horizontal))
    };
    Ok((AnglePair { azimuth, elevation }, distance))
}

/// Straight horizontal motion at constant speed.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MotionState {
    /// m/s, non-negative.
    pub speed: f64,
    /// Heading in the horizontal plane, radians from +x.
    pub heading: f64,
}

impl MotionState {
    pub const STILL: MotionState = MotionState { speed: 0.0, heading: 0.0 };

    pub fn new(speed: f64, heading: f64) -> Self {
        Self { speed, heading }
    }

    pub fn velocity(&self) -> Vec3 {
        let (s, c) = self.heading.sin_cos();
        Vec3::new(self.speed * c, self.speed * s, 0.0)
    }

    pub fn is_still(&self) -> bool {
        self.speed == 0.0
    }

    /// Same speed, opposite heading.
    pub fn reversed(&self) -> Self {
        Self { speed: self.speed, heading: self.heading + PI }
    }
}

/// Position after moving for `t` seconds.
pub fn propagate(position0: Vec3, motion: MotionState, t: f64) -> Vec3 {
    position0 + motion.velocity() * t
}

/// Distance, angles and unit direction of one propagation leg.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leg {
    pub angles: AnglePair,
    pub distance: f64,
    pub direction: Vec3,
}

impl Leg {
    pub fn between(from: Vec3, to: Vec3) -> Result<Self> {
        let (angles, distance) = angles_and_distance(from, to)?;
        Ok(Self { angles, distance, direction: unit_direction(angles) })
    }
}
