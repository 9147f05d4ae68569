//! JSON scenario documents. Angles are degrees, lengths meters.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{MotionState, UlaConfig, Vec3};
use crate::scenario::{
    lookup_rcs, CarrierConfig, ClusterRole, Mobility, NodeLayout, RcsRegistry, Scatterer, Scenario, SensingMode,
    TargetRole, DEFAULT_SPEED_OF_LIGHT,
};

/// Key under `rcs_overrides` that addresses the mobile receiver.
pub const TERMINAL_ID: &str = "terminal";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub carrier: CarrierBlock,
    pub nodes: NodesBlock,
    pub sensing_mode: SensingModeName,
    #[serde(default)]
    pub targets: Vec<TargetEntry>,
    #[serde(default)]
    pub clusters: Vec<ClusterEntry>,
    #[serde(default)]
    pub shared: Vec<SharedEntry>,
    #[serde(default)]
    pub rcs_overrides: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensingModeName {
    Monostatic,
    Bistatic,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierBlock {
    pub frequency_hz: f64,
    pub ray_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed_of_light_mps: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayBlock {
    pub elements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing_wavelengths: Option<f64>,
    pub azimuth_deg: f64,
    pub elevation_deg: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodesBlock {
    pub bs: BsBlock,
    /// May be omitted in monostatic mode, where it mirrors the transmit array.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub echo_rx: Option<EchoBlock>,
    pub comm_rx: CommRxBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BsBlock {
    pub height_m: f64,
    pub array: ArrayBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EchoBlock {
    pub position_m: [f64; 3],
    pub array: ArrayBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommRxBlock {
    pub ground_range_m: f64,
    pub array: ArrayBlock,
    #[serde(default)]
    pub speed_mps: f64,
    #[serde(default)]
    pub heading_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rcs_m2: Option<f64>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub target_type: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetEntry {
    pub id: String,
    pub position_m: [f64; 3],
    #[serde(default)]
    pub speed_mps: f64,
    #[serde(default)]
    pub heading_deg: f64,
    /// Defaults to `speed_mps > 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobile: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rcs_m2: Option<f64>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub target_type: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterEntry {
    pub id: String,
    pub position_m: [f64; 3],
    #[serde(default)]
    pub speed_mps: f64,
    #[serde(default)]
    pub heading_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobile: Option<bool>,
    /// Explicit cluster power, used as given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<f64>,
    /// Relative weight; all weights are rescaled to sum to one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent_m: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedEntry {
    pub id: String,
    pub position_m: [f64; 3],
    #[serde(default)]
    pub speed_mps: f64,
    #[serde(default)]
    pub heading_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobile: Option<bool>,
    pub target: SharedTargetBlock,
    pub cluster: SharedClusterBlock,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedTargetBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rcs_m2: Option<f64>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub target_type: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharedClusterBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent_m: Option<f64>,
}

pub fn parse_scenario(json: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_scenario(&RcsRegistry::default())
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

fn ula(block: &ArrayBlock, wavelength: f64, at: Vec3) -> Result<UlaConfig> {
    let spacing = match (block.spacing_m, block.spacing_wavelengths) {
        (Some(m), None) => m,
        (None, Some(w)) => w * wavelength,
        _ => return Err(Error::Parse("array needs exactly one of `spacing_m`, `spacing_wavelengths`".into())),
    };
    Ok(UlaConfig {
        element_count: block.elements,
        spacing,
        azimuth_orientation: block.azimuth_deg.to_radians(),
        elevation_orientation: block.elevation_deg.to_radians(),
        phase_center: at,
    })
}

fn rcs_of(registry: &RcsRegistry, rcs: Option<f64>, kind: Option<&str>, id: &str) -> Result<Option<f64>> {
    let base = match (rcs, kind) {
        (Some(_), Some(_)) => return Err(Error::Parse(format!("`{id}`: give either `rcs_m2` or `type`, not both"))),
        (Some(v), None) => Some(v),
        (None, Some(k)) => Some(lookup_rcs(registry, k)?),
        (None, None) => None,
    };
    Ok(registry.override_for(id).or(base))
}

fn motion(id: &str, speed: f64, heading_deg: f64, mobile: Option<bool>) -> Result<(MotionState, Mobility)> {
    if !speed.is_finite() || !heading_deg.is_finite() {
        return Err(Error::Parse(format!("`{id}`: non-finite motion")));
    }
    let mobile = mobile.unwrap_or(speed > 0.0);
    let mobility = if mobile { Mobility::Mobile } else { Mobility::Static };
    Ok((MotionState::new(speed, heading_deg.to_radians()), mobility))
}

#[derive(Clone, Copy, PartialEq)]
enum PowerKind {
    Explicit,
    Weight,
}

fn cluster_power(id: &str, power: Option<f64>, weight: Option<f64>) -> Result<(Option<f64>, Option<PowerKind>)> {
    match (power, weight) {
        (Some(_), Some(_)) => Err(Error::Parse(format!("`{id}`: give either `power` or `power_weight`, not both"))),
        (Some(p), None) => Ok((Some(p), Some(PowerKind::Explicit))),
        (None, Some(w)) => Ok((Some(w), Some(PowerKind::Weight))),
        (None, None) => Ok((None, None)),
    }
}

impl ScenarioFile {
    pub fn into_scenario(self, registry: &RcsRegistry) -> Result<Scenario> {
        let mut registry = registry.clone();
        for (id, &v) in &self.rcs_overrides {
            registry.set_override(id, v)?;
        }

        let mut carrier = CarrierConfig::new(self.carrier.frequency_hz, self.carrier.ray_count);
        carrier.speed_of_light = self.carrier.speed_of_light_mps.unwrap_or(DEFAULT_SPEED_OF_LIGHT);
        let wavelength = carrier.wavelength();

        let bs = ula(&self.nodes.bs.array, wavelength, Vec3::new(0.0, 0.0, self.nodes.bs.height_m))?;
        let sensing_mode = match self.sensing_mode {
            SensingModeName::Monostatic => SensingMode::Monostatic,
            SensingModeName::Bistatic => SensingMode::Bistatic,
        };
        let echo_rx = match (&self.nodes.echo_rx, sensing_mode) {
            (Some(e), _) => ula(&e.array, wavelength, Vec3::from(e.position_m))?,
            (None, SensingMode::Monostatic) => bs,
            (None, SensingMode::Bistatic) => return Err(Error::Parse("bistatic mode needs `nodes.echo_rx`".into())),
        };
        let rx = &self.nodes.comm_rx;
        let comm_rx = ula(&rx.array, wavelength, Vec3::new(rx.ground_range_m, 0.0, 0.0))?;
        let (comm_rx_motion, _) = motion("comm_rx", rx.speed_mps, rx.heading_deg, None)?;
        let terminal_rcs = rcs_of(&registry, rx.rcs_m2, rx.target_type.as_deref(), TERMINAL_ID)?
            .ok_or_else(|| Error::Parse("`nodes.comm_rx` needs `rcs_m2` or `type`".into()))?;

        let mut scatterers = Vec::new();
        let mut power_kinds = Vec::new();
        for t in &self.targets {
            let (m, mobility) = motion(&t.id, t.speed_mps, t.heading_deg, t.mobile)?;
            scatterers.push(Scatterer {
                id: t.id.clone(),
                initial_position: Vec3::from(t.position_m),
                motion: m,
                mobility,
                target: Some(TargetRole { rcs: rcs_of(&registry, t.rcs_m2, t.target_type.as_deref(), &t.id)? }),
                cluster: None,
            });
        }
        for c in &self.clusters {
            let (m, mobility) = motion(&c.id, c.speed_mps, c.heading_deg, c.mobile)?;
            let (power, kind) = cluster_power(&c.id, c.power, c.power_weight)?;
            power_kinds.extend(kind);
            scatterers.push(Scatterer {
                id: c.id.clone(),
                initial_position: Vec3::from(c.position_m),
                motion: m,
                mobility,
                target: None,
                cluster: Some(ClusterRole { power, ray_extent: c.extent_m }),
            });
        }
        for s in &self.shared {
            let (m, mobility) = motion(&s.id, s.speed_mps, s.heading_deg, s.mobile)?;
            let (power, kind) = cluster_power(&s.id, s.cluster.power, s.cluster.power_weight)?;
            power_kinds.extend(kind);
            scatterers.push(Scatterer {
                id: s.id.clone(),
                initial_position: Vec3::from(s.position_m),
                motion: m,
                mobility,
                target: Some(TargetRole {
                    rcs: rcs_of(&registry, s.target.rcs_m2, s.target.target_type.as_deref(), &s.id)?,
                }),
                cluster: Some(ClusterRole { power, ray_extent: s.cluster.extent_m }),
            });
        }

        for id in self.rcs_overrides.keys() {
            let known = id == TERMINAL_ID || scatterers.iter().any(|s| &s.id == id && s.is_target());
            if !known {
                return Err(Error::Parse(format!("rcs override for unknown target `{id}`")));
            }
        }

        let mut scenario = Scenario {
            carrier,
            nodes: NodeLayout { bs, echo_rx, comm_rx, comm_rx_motion, terminal_rcs },
            sensing_mode,
            scatterers,
            seed: self.seed,
        };
        let has_weights = power_kinds.contains(&PowerKind::Weight);
        if has_weights && power_kinds.contains(&PowerKind::Explicit) {
            return Err(Error::Parse("mixing `power` and `power_weight` across clusters".into()));
        }
        if has_weights {
            scenario.normalize_cluster_powers();
        }
        Ok(scenario)
    }
}
