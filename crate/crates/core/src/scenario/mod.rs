//! Simulation configuration: carrier, nodes, scatterers and seeding.

mod file;
mod rays;
mod rcs;

pub use file::{load_scenario, parse_scenario, ScenarioFile, TERMINAL_ID};
pub use rays::{realize_rays, realize_rays_indexed, RayPoint};
pub use rcs::{lookup_rcs, RcsRegistry};

use std::collections::HashSet;
use std::fmt;

use crate::geometry::{propagate, MotionState, UlaConfig, Vec3};

/// Propagation speed used by default, m/s.
pub const DEFAULT_SPEED_OF_LIGHT: f64 = 3.0e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierConfig {
    /// Hz.
    pub frequency: f64,
    /// m/s.
    pub speed_of_light: f64,
    /// Rays per communication cluster.
    pub ray_count: usize,
}

impl CarrierConfig {
    pub fn new(frequency: f64, ray_count: usize) -> Self {
        Self { frequency, speed_of_light: DEFAULT_SPEED_OF_LIGHT, ray_count }
    }

    pub fn wavelength(&self) -> f64 {
        self.speed_of_light / self.frequency
    }

    /// 2π/λ.
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength()
    }
}

/// Sensing-target role of a scatterer.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TargetRole {
    /// Radar cross section, m².
    pub rcs: Option<f64>,
}

/// Communication-cluster role of a scatterer.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClusterRole {
    /// Cluster power P_ℓ.
    pub power: Option<f64>,
    /// Radius of the ball holding the cluster's ray sub-scatterers, m.
    pub ray_extent: Option<f64>,
}

/// Which set a scatterer belongs to. Static scatterers never move, so their
/// paths are evaluated without Doppler terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mobility {
    Static,
    Mobile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scatterer {
    pub id: String,
    pub initial_position: Vec3,
    pub motion: MotionState,
    pub mobility: Mobility,
    pub target: Option<TargetRole>,
    pub cluster: Option<ClusterRole>,
}

impl Scatterer {
    pub fn position_at(&self, t: f64) -> Vec3 {
        match self.mobility {
            Mobility::Static => self.initial_position,
            Mobility::Mobile => propagate(self.initial_position, self.motion, t),
        }
    }

    /// Velocity entering the Doppler terms (zero for static scatterers).
    pub fn velocity(&self) -> Vec3 {
        match self.mobility {
            Mobility::Static => Vec3::ZERO,
            Mobility::Mobile => self.motion.velocity(),
        }
    }

    pub fn is_target(&self) -> bool {
        self.target.is_some()
    }

    pub fn is_cluster(&self) -> bool {
        self.cluster.is_some()
    }

    /// Carries both roles, coupling the two channels.
    pub fn is_shared(&self) -> bool {
        self.is_target() && self.is_cluster()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeLayout {
    /// Transmit array, centered at (0, 0, H_0).
    pub bs: UlaConfig,
    pub echo_rx: UlaConfig,
    /// Communication receive array; its phase center is the initial position (ξ_R, 0, 0).
    pub comm_rx: UlaConfig,
    pub comm_rx_motion: MotionState,
    /// RCS of the mobile receiver seen as a radar target, m².
    pub terminal_rcs: f64,
}

impl NodeLayout {
    pub fn bs_height(&self) -> f64 {
        self.bs.phase_center.z
    }

    pub fn comm_rx_position(&self, t: f64) -> Vec3 {
        propagate(self.comm_rx.phase_center, self.comm_rx_motion, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SensingMode {
    Monostatic,
    Bistatic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub carrier: CarrierConfig,
    pub nodes: NodeLayout,
    pub sensing_mode: SensingMode,
    pub scatterers: Vec<Scatterer>,
    /// Root seed for every random stream.
    pub seed: u64,
}

/// A broken invariant, reported as data by [`Scenario::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub code: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(code: &'static str, detail: impl Into<String>) -> Self {
        Self { code, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

impl Scenario {
    pub fn scatterer(&self, id: &str) -> Option<&Scatterer> {
        self.scatterers.iter().find(|s| s.id == id)
    }

    /// Set C_L1.
    pub fn static_targets(&self) -> impl Iterator<Item = &Scatterer> {
        self.scatterers.iter().filter(|s| s.is_target() && s.mobility == Mobility::Static)
    }

    /// Set C_L2.
    pub fn mobile_targets(&self) -> impl Iterator<Item = &Scatterer> {
        self.scatterers.iter().filter(|s| s.is_target() && s.mobility == Mobility::Mobile)
    }

    /// Set C_L3.
    pub fn static_clusters(&self) -> impl Iterator<Item = &Scatterer> {
        self.scatterers.iter().filter(|s| s.is_cluster() && s.mobility == Mobility::Static)
    }

    /// Set C_L4.
    pub fn mobile_clusters(&self) -> impl Iterator<Item = &Scatterer> {
        self.scatterers.iter().filter(|s| s.is_cluster() && s.mobility == Mobility::Mobile)
    }

    pub fn shared(&self) -> impl Iterator<Item = &Scatterer> {
        self.scatterers.iter().filter(|s| s.is_shared())
    }

    pub fn wavelength(&self) -> f64 {
        self.carrier.wavelength()
    }

    /// Rescales cluster powers so they sum to one over all clusters.
    /// Leaves the scenario untouched when any power is missing or the sum is zero.
    pub fn normalize_cluster_powers(&mut self) {
        let powers: Option<Vec<f64>> = self.scatterers.iter().filter_map(|s| s.cluster).map(|c| c.power).collect();
        let Some(powers) = powers else { return };
        let total: f64 = powers.iter().sum();
        if !(total > 0.0) {
            return;
        }
        for c in self.scatterers.iter_mut().filter_map(|s| s.cluster.as_mut()) {
            c.power = c.power.map(|p| p / total);
        }
    }

    /// Returns every broken invariant; an empty list means the scenario is usable.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let c = &self.carrier;
        if !(c.frequency > 0.0 && c.frequency.is_finite()) {
            out.push(Violation::new("nonpositive-frequency", format!("f_c = {}", c.frequency)));
        }
        if !(c.speed_of_light > 0.0 && c.speed_of_light.is_finite()) {
            out.push(Violation::new("nonpositive-speed-of-light", format!("c = {}", c.speed_of_light)));
        }
        if c.ray_count == 0 {
            out.push(Violation::new("zero-ray-count", "clusters need at least one ray"));
        }

        let n = &self.nodes;
        for (name, ula) in [("bs", &n.bs), ("echo_rx", &n.echo_rx), ("comm_rx", &n.comm_rx)] {
            if ula.element_count == 0 {
                out.push(Violation::new("invalid-array", format!("{name}: element count is zero")));
            }
            if !(ula.spacing > 0.0) {
                out.push(Violation::new("invalid-array", format!("{name}: spacing {} <= 0", ula.spacing)));
            }
        }
        if !(n.bs_height() > 0.0) || n.bs.phase_center.x != 0.0 || n.bs.phase_center.y != 0.0 {
            out.push(Violation::new("bs-placement", "transmit array must sit at (0, 0, H_0) with H_0 > 0"));
        }
        let rx0 = n.comm_rx.phase_center;
        if !(rx0.x > 0.0) || rx0.y != 0.0 || rx0.z != 0.0 {
            out.push(Violation::new("comm-rx-off-axis", "receiver must start at (ξ_R, 0, 0), ξ_R > 0"));
        }
        if !(n.comm_rx_motion.speed >= 0.0) {
            out.push(Violation::new("negative-speed", "comm_rx"));
        }
        if !(n.terminal_rcs > 0.0) {
            out.push(Violation::new("nonpositive-rcs", format!("terminal: {}", n.terminal_rcs)));
        }

        if self.sensing_mode == SensingMode::Monostatic {
            let (e, b) = (&n.echo_rx, &n.bs);
            if e.phase_center != b.phase_center {
                out.push(Violation::new(
                    "monostatic-position-mismatch",
                    "echo array must coincide with the transmit array",
                ));
            }
            if e.element_count != b.element_count
                || e.spacing != b.spacing
                || e.azimuth_orientation != b.azimuth_orientation
                || e.elevation_orientation != b.elevation_orientation
            {
                out.push(Violation::new(
                    "monostatic-array-mismatch",
                    "echo array parameters must equal the transmit array",
                ));
            }
        }

        let mut seen = HashSet::new();
        for s in &self.scatterers {
            if !seen.insert(s.id.as_str()) {
                out.push(Violation::new("duplicate-id", s.id.clone()));
            }
            if s.target.is_none() && s.cluster.is_none() {
                out.push(Violation::new("no-role", s.id.clone()));
            }
            if !(s.motion.speed >= 0.0) {
                out.push(Violation::new("negative-speed", s.id.clone()));
            }
            if s.mobility == Mobility::Static && s.motion.speed != 0.0 {
                out.push(Violation::new("static-with-velocity", s.id.clone()));
            }
            if let Some(t) = s.target {
                match t.rcs {
                    None => out.push(Violation::new("missing-rcs", s.id.clone())),
                    Some(v) if !(v > 0.0) => out.push(Violation::new("nonpositive-rcs", format!("{}: {v}", s.id))),
                    _ => {}
                }
            }
            if let Some(cl) = s.cluster {
                match cl.power {
                    None => out.push(Violation::new("missing-cluster-power", s.id.clone())),
                    Some(p) if !(p >= 0.0) => {
                        out.push(Violation::new("negative-cluster-power", format!("{}: {p}", s.id)))
                    }
                    _ => {}
                }
                match cl.ray_extent {
                    None => out.push(Violation::new("missing-ray-extent", s.id.clone())),
                    Some(r) if !(r >= 0.0) => out.push(Violation::new("negative-ray-extent", format!("{}: {r}", s.id))),
                    _ => {}
                }
            }
        }
        out
    }
}
