//! Communication channel: base station → (LoS | clusters) → mobile receiver.
//!
//! Each cluster contributes a single tap whose amplitude is the normalized
//! sum of `I` rays with i.i.d. uniform phases. A [`CommRealization`] freezes
//! the ray points and phases; they are reused for every antenna pair and
//! every instant evaluated with it.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{element_displacement, Leg, Vec3};
use crate::path::{tap_grid, PathRay, PathSnapshot, PathSource, Tap, TapMatrix};
use crate::rng::{stream, Purpose};
use crate::scenario::{realize_rays_indexed, Mobility, RayPoint, Scatterer, Scenario};
use crate::sensing::{check_time, displacements};

/// One-way free-space power gain λ² / ((4π)² ξ²).
pub fn friis_gain(wavelength: f64, xi: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::DegenerateGeometry(format!("distance {xi} must be positive")));
    }
    Ok(wavelength * wavelength / ((4.0 * PI).powi(2) * xi * xi))
}

/// Cluster power gain λ² P / ((4π)² (ξ_T + ξ_R)²).
pub fn cluster_gain(wavelength: f64, power: f64, xi_t: f64, xi_r: f64) -> Result<f64> {
    let total = xi_t + xi_r;
    if !(total > 0.0) {
        return Err(Error::DegenerateGeometry(format!("path length {total} must be positive")));
    }
    if !(power >= 0.0) {
        return Err(Error::Domain(format!("cluster power {power} must be non-negative")));
    }
    Ok(wavelength * wavelength * power / ((4.0 * PI).powi(2) * total * total))
}

/// Ray points and phases of one cluster in one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySet {
    pub cluster_id: String,
    pub points: Vec<RayPoint>,
    /// Uniform on [0, 2π).
    pub phases: Vec<f64>,
}

impl RaySet {
    pub fn draw(
        scatterer: &Scatterer,
        scenario: &Scenario,
        seed: u64,
        phase_draw: u64,
        placement_draw: u64,
    ) -> Result<Self> {
        let points = realize_rays_indexed(scatterer, &scenario.carrier, seed, placement_draw)?;
        let phases = draw_phases(seed, &scatterer.id, phase_draw, points.len());
        Ok(Self { cluster_id: scatterer.id.clone(), points, phases })
    }
}

pub(crate) fn draw_phases(seed: u64, id: &str, draw: u64, n: usize) -> Vec<f64> {
    let mut rng = stream(seed, id, Purpose::RayPhases, draw);
    (0..n).map(|_| rng.random_range(0.0..TAU)).collect()
}

/// Frozen random state of the communication channel.
#[derive(Debug, Clone, PartialEq)]
pub struct CommRealization {
    pub seed: u64,
    /// Ray sets in scenario order, one per cluster.
    pub ray_sets: Vec<RaySet>,
}

impl CommRealization {
    pub fn draw(scenario: &Scenario, seed: u64) -> Result<Self> {
        Self::draw_indexed(scenario, seed, 0, 0)
    }

    /// Realization with phase draw `phase_draw` and ray placement draw `placement_draw`.
    pub fn draw_indexed(scenario: &Scenario, seed: u64, phase_draw: u64, placement_draw: u64) -> Result<Self> {
        let ray_sets = scenario
            .scatterers
            .iter()
            .filter(|s| s.is_cluster())
            .map(|s| RaySet::draw(s, scenario, seed, phase_draw, placement_draw))
            .collect::<Result<_>>()?;
        Ok(Self { seed, ray_sets })
    }

    pub fn ray_set(&self, cluster_id: &str) -> Option<&RaySet> {
        self.ray_sets.iter().find(|r| r.cluster_id == cluster_id)
    }

    /// Replaces every phase with a fresh draw, keeping the ray points.
    pub fn redraw_phases(&mut self, phase_draw: u64) {
        for set in &mut self.ray_sets {
            set.phases = draw_phases(self.seed, &set.cluster_id, phase_draw, set.phases.len());
        }
    }
}

pub fn los_path(scenario: &Scenario, t: f64) -> Result<PathSnapshot> {
    check_time(t)?;
    let k = scenario.carrier.wavenumber();
    let nodes = &scenario.nodes;
    let bs = nodes.bs.phase_center;
    let leg = Leg::between(bs, nodes.comm_rx_position(t))?;
    let reference = bs.distance(nodes.comm_rx.phase_center);
    let gain = friis_gain(scenario.wavelength(), leg.distance)?;
    let v = nodes.comm_rx_motion.velocity();
    let mut phase = -k * reference;
    phase += k * (v * t).dot(-leg.direction);
    Ok(PathSnapshot {
        source: PathSource::LineOfSight,
        t,
        gain,
        delay: leg.distance / scenario.carrier.speed_of_light,
        scale: gain.sqrt(),
        rays: vec![PathRay { phase, tx_direction: leg.direction, rx_direction: -leg.direction }],
        random_phases: Vec::new(),
    })
}

fn cluster_of<'a>(scenario: &'a Scenario, rays: &RaySet) -> Result<&'a Scatterer> {
    scenario
        .scatterer(&rays.cluster_id)
        .filter(|s| s.is_cluster())
        .ok_or_else(|| Error::Config(format!("no cluster `{}` in scenario", rays.cluster_id)))
}

/// Cluster path. With `moving` false the cluster is held at its initial
/// position and no cluster Doppler terms are applied.
fn cluster_path(scenario: &Scenario, cluster: &Scatterer, rays: &RaySet, t: f64, moving: bool) -> Result<PathSnapshot> {
    check_time(t)?;
    let power = cluster
        .cluster
        .and_then(|c| c.power)
        .ok_or_else(|| Error::Config(format!("cluster `{}` has no power", cluster.id)))?;
    if rays.points.is_empty() || rays.points.len() != rays.phases.len() {
        return Err(Error::Config(format!("cluster `{}` has an inconsistent ray set", cluster.id)));
    }
    let k = scenario.carrier.wavenumber();
    let nodes = &scenario.nodes;
    let bs = nodes.bs.phase_center;
    let rx0 = nodes.comm_rx.phase_center;
    let rx = nodes.comm_rx_position(t);
    let v_rx = nodes.comm_rx_motion.velocity();
    let v_cl = cluster.motion.velocity();

    let centroid = if moving { cluster.position_at(t) } else { cluster.initial_position };
    let leg_t = Leg::between(bs, centroid)?;
    let leg_r = Leg::between(rx, centroid)?;
    let gain = cluster_gain(scenario.wavelength(), power, leg_t.distance, leg_r.distance)?;

    let path_rays = rays
        .points
        .iter()
        .map(|point| {
            let at = if moving { point.position_at(cluster, t) } else { point.initial_position };
            let ray_t = Leg::between(bs, at)?;
            let ray_r = Leg::between(rx, at)?;
            let reference = bs.distance(point.initial_position) + rx0.distance(point.initial_position);
            let mut phase = -k * reference;
            if moving {
                phase += k * (-v_cl * t).dot(ray_t.direction);
                phase += k * ((v_rx - v_cl) * t).dot(ray_r.direction);
            } else {
                phase += k * (v_rx * t).dot(ray_r.direction);
            }
            Ok(PathRay { phase, tx_direction: ray_t.direction, rx_direction: ray_r.direction })
        })
        .collect::<Result<Vec<_>>>()?;

    let source = match cluster.mobility {
        Mobility::Static => PathSource::StaticCluster(cluster.id.clone()),
        Mobility::Mobile => PathSource::MobileCluster(cluster.id.clone()),
    };
    Ok(PathSnapshot {
        source,
        t,
        gain,
        delay: (leg_t.distance + leg_r.distance) / scenario.carrier.speed_of_light,
        scale: (gain / rays.points.len() as f64).sqrt(),
        rays: path_rays,
        random_phases: rays.phases.clone(),
    })
}

/// Static-cluster path. Fails for a cluster that moves.
pub fn static_cluster_path(scenario: &Scenario, rays: &RaySet, t: f64) -> Result<PathSnapshot> {
    let cluster = cluster_of(scenario, rays)?;
    if !cluster.motion.is_still() && cluster.mobility == Mobility::Mobile {
        return Err(Error::Domain(format!("cluster `{}` moves", cluster.id)));
    }
    cluster_path(scenario, cluster, rays, t, false)
}

/// Mobile-cluster path; cluster and rays are propagated to `t`.
pub fn mobile_cluster_path(scenario: &Scenario, rays: &RaySet, t: f64) -> Result<PathSnapshot> {
    let cluster = cluster_of(scenario, rays)?;
    cluster_path(scenario, cluster, rays, t, true)
}

/// LoS, static-cluster and mobile-cluster paths, in that order.
pub fn comm_paths(scenario: &Scenario, realization: &CommRealization, t: f64) -> Result<Vec<PathSnapshot>> {
    let mut paths = vec![los_path(scenario, t)?];
    for mobility in [Mobility::Static, Mobility::Mobile] {
        for set in &realization.ray_sets {
            let cluster = cluster_of(scenario, set)?;
            if cluster.mobility == mobility {
                paths.push(cluster_path(scenario, cluster, set, t, mobility == Mobility::Mobile)?);
            }
        }
    }
    Ok(paths)
}

fn pair_displacements(scenario: &Scenario, p: usize, q: usize) -> Result<(Vec3, Vec3)> {
    Ok((element_displacement(&scenario.nodes.bs, p)?, element_displacement(&scenario.nodes.comm_rx, q)?))
}

pub fn los_tap(scenario: &Scenario, t: f64, p: usize, q: usize) -> Result<Tap> {
    let (dp, dq) = pair_displacements(scenario, p, q)?;
    Ok(los_path(scenario, t)?.tap(scenario.carrier.wavenumber(), dp, dq))
}

pub fn static_cluster_tap(scenario: &Scenario, rays: &RaySet, t: f64, p: usize, q: usize) -> Result<Tap> {
    let (dp, dq) = pair_displacements(scenario, p, q)?;
    Ok(static_cluster_path(scenario, rays, t)?.tap(scenario.carrier.wavenumber(), dp, dq))
}

pub fn mobile_cluster_tap(scenario: &Scenario, rays: &RaySet, t: f64, p: usize, q: usize) -> Result<Tap> {
    let (dp, dq) = pair_displacements(scenario, p, q)?;
    Ok(mobile_cluster_path(scenario, rays, t)?.tap(scenario.carrier.wavenumber(), dp, dq))
}

/// Communication channel matrix at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommCir {
    pub t: f64,
    pub seed: u64,
    /// `taps[p-1][q-1]`, each `1 + L_3 + L_4` long.
    pub taps: Vec<Vec<Vec<Tap>>>,
}

impl TapMatrix for CommCir {
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

/// Draws the realization for `seed` and evaluates the channel at `t`.
pub fn comm_cir(scenario: &Scenario, seed: u64, t: f64) -> Result<CommCir> {
    comm_cir_with(scenario, &CommRealization::draw(scenario, seed)?, t)
}

pub fn comm_cir_with(scenario: &Scenario, realization: &CommRealization, t: f64) -> Result<CommCir> {
    let paths = comm_paths(scenario, realization, t)?;
    let taps = tap_grid(
        &paths,
        scenario.carrier.wavenumber(),
        &displacements(&scenario.nodes.bs),
        &displacements(&scenario.nodes.comm_rx),
    );
    Ok(CommCir { t, seed: realization.seed, taps })
}
