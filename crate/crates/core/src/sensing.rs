//! Sensing channel: base station → targets → echo receiver.
//!
//! Every target is a point scatterer contributing one tap per antenna pair.
//! The mobile receiver is always present as the terminal target. Nothing in
//! this module draws random numbers.

use std::f64::consts::PI;

use crate::comm::RaySet;
use crate::error::{Error, Result};
use crate::geometry::{element_displacement, Leg, UlaConfig, Vec3};
use crate::path::{tap_grid, PathRay, PathSnapshot, PathSource, Tap, TapMatrix};
use crate::scenario::{Mobility, Scatterer, Scenario, TERMINAL_ID};

/// Two-way radar-equation power gain λ²σ / ((4π)³ (ξ_T ξ_R)²).
pub fn radar_gain(wavelength: f64, rcs: f64, xi_t: f64, xi_r: f64) -> Result<f64> {
    if !(xi_t > 0.0 && xi_r > 0.0) {
        return Err(Error::DegenerateGeometry(format!("radar legs {xi_t}, {xi_r} must be positive")));
    }
    if !(rcs > 0.0) {
        return Err(Error::Domain(format!("RCS {rcs} must be positive")));
    }
    Ok(wavelength * wavelength * rcs / ((4.0 * PI).powi(3) * (xi_t * xi_r).powi(2)))
}

/// Element displacements of every antenna of an array, in index order.
pub(crate) fn displacements(ula: &UlaConfig) -> Vec<Vec3> {
    (1..=ula.element_count).map(|i| element_displacement(ula, i).expect("index in range")).collect()
}

/// A point target as the sensing channel sees it at one instant.
struct EchoGeometry {
    source: PathSource,
    initial: Vec3,
    current: Vec3,
    /// `None` for paths evaluated without Doppler terms.
    velocity: Option<Vec3>,
    rcs: f64,
}

fn echo_path(scenario: &Scenario, echo: EchoGeometry, t: f64) -> Result<PathSnapshot> {
    let k = scenario.carrier.wavenumber();
    let bs = scenario.nodes.bs.phase_center;
    let rx = scenario.nodes.echo_rx.phase_center;
    let tx_leg = Leg::between(bs, echo.current)?;
    let rx_leg = Leg::between(rx, echo.current)?;
    let gain = radar_gain(scenario.wavelength(), echo.rcs, tx_leg.distance, rx_leg.distance)?;

    // Carrier phase is referenced to the initial geometry; motion enters the
    // phase through the Doppler terms only.
    let ref_t = bs.distance(echo.initial);
    let ref_r = rx.distance(echo.initial);
    if !(ref_t > 0.0 && ref_r > 0.0) {
        return Err(Error::DegenerateGeometry(format!("{} starts on an array", echo.source.label())));
    }
    let mut phase = -k * (ref_t + ref_r);
    if let Some(v) = echo.velocity {
        let shift = -v * t;
        phase += k * shift.dot(tx_leg.direction);
        phase += k * shift.dot(rx_leg.direction);
    }

    Ok(PathSnapshot {
        source: echo.source,
        t,
        gain,
        delay: (tx_leg.distance + rx_leg.distance) / scenario.carrier.speed_of_light,
        scale: gain.sqrt(),
        rays: vec![PathRay { phase, tx_direction: tx_leg.direction, rx_direction: rx_leg.direction }],
        random_phases: Vec::new(),
    })
}

fn target_rcs(s: &Scatterer) -> Result<f64> {
    s.target.and_then(|r| r.rcs).ok_or_else(|| Error::Config(format!("target `{}` has no RCS", s.id)))
}

/// Path of the mobile receiver seen as a target.
pub fn terminal_path(scenario: &Scenario, t: f64) -> Result<PathSnapshot> {
    check_time(t)?;
    let nodes = &scenario.nodes;
    let echo = EchoGeometry {
        source: PathSource::Terminal,
        initial: nodes.comm_rx.phase_center,
        current: nodes.comm_rx_position(t),
        velocity: Some(nodes.comm_rx_motion.velocity()),
        rcs: nodes.terminal_rcs,
    };
    echo_path(scenario, echo, t)
}

fn static_target_path(scenario: &Scenario, s: &Scatterer, t: f64) -> Result<PathSnapshot> {
    let echo = EchoGeometry {
        source: PathSource::StaticTarget(s.id.clone()),
        initial: s.initial_position,
        current: s.initial_position,
        velocity: None,
        rcs: target_rcs(s)?,
    };
    echo_path(scenario, echo, t)
}

fn mobile_target_path(scenario: &Scenario, s: &Scatterer, t: f64) -> Result<PathSnapshot> {
    let echo = EchoGeometry {
        source: PathSource::MobileTarget(s.id.clone()),
        initial: s.initial_position,
        current: s.position_at(t),
        velocity: Some(s.motion.velocity()),
        rcs: target_rcs(s)?,
    };
    echo_path(scenario, echo, t)
}

/// Echo of a target that is also a cluster, resolved into the cluster's
/// sub-scatterers. The rays carry the cluster's points and random phases, so
/// the echo shares its small-scale fading with the communication tap.
pub fn resolved_echo_path(scenario: &Scenario, rays: &RaySet, t: f64) -> Result<PathSnapshot> {
    check_time(t)?;
    let s = scenario
        .scatterer(&rays.cluster_id)
        .filter(|s| s.is_target())
        .ok_or_else(|| Error::Config(format!("no target `{}` in scenario", rays.cluster_id)))?;
    if rays.points.is_empty() || rays.points.len() != rays.phases.len() {
        return Err(Error::Config(format!("target `{}` has an inconsistent ray set", s.id)));
    }
    let k = scenario.carrier.wavenumber();
    let bs = scenario.nodes.bs.phase_center;
    let rx = scenario.nodes.echo_rx.phase_center;
    let v = s.velocity();
    let centroid = s.position_at(t);
    let gain = radar_gain(scenario.wavelength(), target_rcs(s)?, bs.distance(centroid), rx.distance(centroid))?;
    let path_rays = rays
        .points
        .iter()
        .map(|point| {
            let at = point.position_at(s, t);
            let leg_t = Leg::between(bs, at)?;
            let leg_r = Leg::between(rx, at)?;
            let reference = bs.distance(point.initial_position) + rx.distance(point.initial_position);
            let shift = -v * t;
            let phase = -k * reference + k * shift.dot(leg_t.direction) + k * shift.dot(leg_r.direction);
            Ok(PathRay { phase, tx_direction: leg_t.direction, rx_direction: leg_r.direction })
        })
        .collect::<Result<Vec<_>>>()?;
    let source = match s.mobility {
        Mobility::Static => PathSource::StaticTarget(s.id.clone()),
        Mobility::Mobile => PathSource::MobileTarget(s.id.clone()),
    };
    Ok(PathSnapshot {
        source,
        t,
        gain,
        delay: (bs.distance(centroid) + rx.distance(centroid)) / scenario.carrier.speed_of_light,
        scale: (gain / rays.points.len() as f64).sqrt(),
        rays: path_rays,
        random_phases: rays.phases.clone(),
    })
}

/// Path of the target `id` (point-scatterer model), or of the terminal for [`TERMINAL_ID`].
pub fn target_path(scenario: &Scenario, id: &str, t: f64) -> Result<PathSnapshot> {
    check_time(t)?;
    if id == TERMINAL_ID {
        return terminal_path(scenario, t);
    }
    let s = scenario
        .scatterer(id)
        .filter(|s| s.is_target())
        .ok_or_else(|| Error::Config(format!("no target `{id}` in scenario")))?;
    match s.mobility {
        Mobility::Static => static_target_path(scenario, s, t),
        Mobility::Mobile => mobile_target_path(scenario, s, t),
    }
}

/// Paths of the static targets. They do not depend on time; `t` only labels the snapshots.
pub fn static_target_paths(scenario: &Scenario, t: f64) -> Result<Vec<PathSnapshot>> {
    scenario.static_targets().map(|s| static_target_path(scenario, s, t)).collect()
}

pub fn mobile_target_paths(scenario: &Scenario, t: f64) -> Result<Vec<PathSnapshot>> {
    check_time(t)?;
    scenario.mobile_targets().map(|s| mobile_target_path(scenario, s, t)).collect()
}

/// Terminal, static and mobile target paths, in that order.
pub fn sensing_paths(scenario: &Scenario, t: f64) -> Result<Vec<PathSnapshot>> {
    let mut paths = vec![terminal_path(scenario, t)?];
    paths.extend(static_target_paths(scenario, t)?);
    paths.extend(mobile_target_paths(scenario, t)?);
    Ok(paths)
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time {t} must be finite and non-negative")))
    }
}

fn pair_displacements(scenario: &Scenario, p: usize, q: usize) -> Result<(Vec3, Vec3)> {
    Ok((element_displacement(&scenario.nodes.bs, p)?, element_displacement(&scenario.nodes.echo_rx, q)?))
}

/// Terminal-target tap between transmit antenna `p` and echo antenna `q` (1-based).
pub fn terminal_tap(scenario: &Scenario, t: f64, p: usize, q: usize) -> Result<Tap> {
    let (dp, dq) = pair_displacements(scenario, p, q)?;
    Ok(terminal_path(scenario, t)?.tap(scenario.carrier.wavenumber(), dp, dq))
}

/// One tap per static target; identical for every `t`.
pub fn static_target_taps(scenario: &Scenario, p: usize, q: usize) -> Result<Vec<Tap>> {
    let (dp, dq) = pair_displacements(scenario, p, q)?;
    let k = scenario.carrier.wavenumber();
    Ok(static_target_paths(scenario, 0.0)?.iter().map(|path| path.tap(k, dp, dq)).collect())
}

/// One tap per mobile target, positions propagated to `t`.
pub fn mobile_target_taps(scenario: &Scenario, t: f64, p: usize, q: usize) -> Result<Vec<Tap>> {
    let (dp, dq) = pair_displacements(scenario, p, q)?;
    let k = scenario.carrier.wavenumber();
    Ok(mobile_target_paths(scenario, t)?.iter().map(|path| path.tap(k, dp, dq)).collect())
}

/// Sensing channel matrix at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingCir {
    pub t: f64,
    /// `taps[p-1][q-1]`, each `1 + L_1 + L_2` long.
    pub taps: Vec<Vec<Vec<Tap>>>,
}

impl TapMatrix for SensingCir {
    fn time(&self) -> f64 {
        self.t
    }
    fn tx_count(&self) -> usize {
        self.taps.len()
    }
    fn rx_count(&self) -> usize {
        self.taps.first().map_or(0, Vec::len)
    }
    fn pair(&self, p: usize, q: usize) -> &[Tap] {
        &self.taps[p - 1][q - 1]
    }
}

pub fn sensing_cir(scenario: &Scenario, t: f64) -> Result<SensingCir> {
    let paths = sensing_paths(scenario, t)?;
    let taps = tap_grid(
        &paths,
        scenario.carrier.wavenumber(),
        &displacements(&scenario.nodes.bs),
        &displacements(&scenario.nodes.echo_rx),
    );
    Ok(SensingCir { t, taps })
}
