#![allow(dead_code)]

use isac_channel::geometry::{MotionState, Vec3};
use isac_channel::presets;
use isac_channel::scenario::{ClusterRole, Mobility, Scatterer, Scenario, SensingMode, TargetRole};

/// Bundled bistatic node layout with no scatterers.
pub fn empty_bistatic() -> Scenario {
    let mut s = presets::bistatic();
    s.scatterers.clear();
    s
}

pub fn empty_monostatic() -> Scenario {
    let mut s = empty_bistatic();
    s.sensing_mode = SensingMode::Monostatic;
    s.nodes.echo_rx = s.nodes.bs;
    s
}

fn motion(speed: f64, heading_deg: f64) -> (MotionState, Mobility) {
    let m = MotionState::new(speed, heading_deg.to_radians());
    (m, if speed > 0.0 { Mobility::Mobile } else { Mobility::Static })
}

pub fn target(id: &str, at: [f64; 3], speed: f64, heading_deg: f64, rcs: f64) -> Scatterer {
    let (motion, mobility) = motion(speed, heading_deg);
    Scatterer {
        id: id.into(),
        initial_position: Vec3::from(at),
        motion,
        mobility,
        target: Some(TargetRole { rcs: Some(rcs) }),
        cluster: None,
    }
}

pub fn cluster(id: &str, at: [f64; 3], speed: f64, heading_deg: f64, power: f64, extent: f64) -> Scatterer {
    let (motion, mobility) = motion(speed, heading_deg);
    Scatterer {
        id: id.into(),
        initial_position: Vec3::from(at),
        motion,
        mobility,
        target: None,
        cluster: Some(ClusterRole { power: Some(power), ray_extent: Some(extent) }),
    }
}

pub fn shared(id: &str, at: [f64; 3], speed: f64, heading_deg: f64, rcs: f64, power: f64, extent: f64) -> Scatterer {
    let mut s = cluster(id, at, speed, heading_deg, power, extent);
    s.target = Some(TargetRole { rcs: Some(rcs) });
    s
}

/// Monostatic layout for the terminal Doppler check: the receiver sits 1 km
/// out on the ground, 1 m below the array, and drives straight away from it.
pub fn radial_terminal() -> Scenario {
    let mut s = empty_monostatic();
    s.nodes.bs.phase_center = Vec3::new(0.0, 0.0, 1.0);
    s.nodes.echo_rx = s.nodes.bs;
    s.nodes.comm_rx.phase_center = Vec3::new(1000.0, 0.0, 0.0);
    s.nodes.comm_rx_motion = MotionState::new(5.0, 0.0);
    s
}

/// Unwrapped phase rate of `phase(t)` by a forward difference, Hz.
pub fn phase_rate(phase: impl Fn(f64) -> f64, t: f64, dt: f64) -> f64 {
    let mut d = phase(t + dt) - phase(t);
    d = (d + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
    d / (std::f64::consts::TAU * dt)
}
