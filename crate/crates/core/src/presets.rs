//! Bundled scenarios and the standard correlation sweeps run on them.
//!
//! The bundled layouts use the usual 28 GHz vehicular link parameters. The
//! target and cluster placements are example values chosen for this crate.

use crate::scenario::{parse_scenario, Scenario};
use crate::stats::{linear_grid, Component};

/// Bistatic layout: echo array at (100, -30, 30) m.
pub const BISTATIC_JSON: &str = include_str!("../scenarios/vehicular_28ghz_bistatic.json");
/// Same scatterers with the echo receiver co-located with the transmitter.
pub const MONOSTATIC_JSON: &str = include_str!("../scenarios/vehicular_28ghz_monostatic.json");

pub fn bistatic() -> Scenario {
    parse_scenario(BISTATIC_JSON).expect("bundled bistatic scenario parses")
}

pub fn monostatic() -> Scenario {
    parse_scenario(MONOSTATIC_JSON).expect("bundled monostatic scenario parses")
}

/// A spatial CCF sweep over receive-antenna offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialSweep {
    pub t: f64,
    pub components: Vec<Component>,
    /// Wavelengths.
    pub dq_max: f64,
    pub dq_steps: usize,
}

impl SpatialSweep {
    pub fn offsets(&self) -> Vec<f64> {
        linear_grid(self.dq_max, self.dq_steps)
    }
}

/// A temporal ACF sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalSweep {
    pub t: f64,
    pub components: Vec<Component>,
    /// Seconds.
    pub dt_max: f64,
    pub dt_steps: usize,
}

impl TemporalSweep {
    pub fn lags(&self) -> Vec<f64> {
        linear_grid(self.dt_max, self.dt_steps)
    }
}

/// Spatial CCF at t = 2 s for static/mobile clusters and static/mobile targets.
pub fn fig2() -> SpatialSweep {
    SpatialSweep {
        t: 2.0,
        components: vec![
            Component::CommStatic,
            Component::CommMobile,
            Component::SensingStatic,
            Component::SensingMobile,
        ],
        dq_max: 2.0,
        dq_steps: 40,
    }
}

/// Temporal ACF at t = 5 s for static/mobile clusters, mobile targets and the full echo.
pub fn fig3() -> TemporalSweep {
    TemporalSweep {
        t: 5.0,
        components: vec![
            Component::CommStatic,
            Component::CommMobile,
            Component::SensingMobile,
            Component::SensingTotal,
        ],
        dt_max: 5e-4,
        dt_steps: 50,
    }
}
