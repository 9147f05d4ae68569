//! Correlation between a sensing tap and a communication tap.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{reduce, CorrelationOptions, Ensemble, Sample};
use crate::comm::{los_path, mobile_cluster_path, static_cluster_path, RaySet};
use crate::error::{Error, Result};
use crate::geometry::element_displacement;
use crate::path::PathSnapshot;
use crate::rng::{stream, Purpose};
use crate::scenario::{Mobility, Scenario};
use crate::sensing::{resolved_echo_path, target_path};

/// Identifier of the LoS path on the communication side.
pub const LOS_ID: &str = "los";

/// A sensing tap (target id, or `terminal`) paired with a communication tap (cluster id, or `los`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossLink {
    pub sensing_id: String,
    pub comm_id: String,
}

impl CrossLink {
    pub fn new(sensing_id: impl Into<String>, comm_id: impl Into<String>) -> Self {
        Self { sensing_id: sensing_id.into(), comm_id: comm_id.into() }
    }

    /// Links the first scatterer that is both a target and a cluster with itself.
    pub fn first_shared(scenario: &Scenario) -> Result<Self> {
        scenario
            .shared()
            .next()
            .map(|s| Self::new(s.id.clone(), s.id.clone()))
            .ok_or_else(|| Error::UndefinedCorrelation("scenario has no shared scatterer".into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCorrelation {
    pub t: f64,
    pub link: CrossLink,
    pub value: Complex64,
    pub std_error: f64,
    pub n_mc: usize,
}

/// Estimates `E[h_s* h_c] / sqrt(E|h_s|² E|h_c|²)` between the two taps of `link`
/// at the reference antennas of `options`.
///
/// A target that is also a cluster echoes through the cluster's rays and
/// random phases. Any other target carries an independent uniform scattering
/// phase per realization.
pub fn cross_channel_correlation(
    scenario: &Scenario,
    link: &CrossLink,
    t: f64,
    n_mc: usize,
    seed: u64,
    options: &CorrelationOptions,
) -> Result<CrossCorrelation> {
    if n_mc == 0 {
        return Err(Error::Domain("ensemble size must be at least one".into()));
    }
    let nodes = &scenario.nodes;
    let d_tx = element_displacement(&nodes.bs, options.tx_antenna)?;
    let d_echo = element_displacement(&nodes.echo_rx, options.rx_antenna)?;
    let d_comm = element_displacement(&nodes.comm_rx, options.rx_antenna)?;
    let k = scenario.carrier.wavenumber();

    let sensing_cluster = scenario.scatterer(&link.sensing_id).filter(|s| s.is_target() && s.is_cluster());
    let comm_cluster = if link.comm_id == LOS_ID {
        None
    } else {
        Some(
            scenario
                .scatterer(&link.comm_id)
                .filter(|s| s.is_cluster())
                .ok_or_else(|| Error::Config(format!("no cluster `{}` in scenario", link.comm_id)))?,
        )
    };
    // Validates the sensing id and geometry once before sampling.
    target_path(scenario, &link.sensing_id, t)?;

    let draw = |n: u64| -> Result<Sample> {
        let placement = match options.ensemble {
            Ensemble::PhasesOnly => 0,
            Ensemble::Full => n,
        };
        let comm_rays = comm_cluster.map(|c| RaySet::draw(c, scenario, seed, n, placement)).transpose()?;
        let comm = match (comm_cluster, &comm_rays) {
            (Some(c), Some(rays)) if c.mobility == Mobility::Mobile => mobile_cluster_path(scenario, rays, t)?,
            (Some(_), Some(rays)) => static_cluster_path(scenario, rays, t)?,
            _ => los_path(scenario, t)?,
        };
        let echo: PathSnapshot = match sensing_cluster {
            Some(s) => match &comm_rays {
                Some(rays) if rays.cluster_id == s.id => resolved_echo_path(scenario, rays, t)?,
                _ => resolved_echo_path(scenario, &RaySet::draw(s, scenario, seed, n, placement)?, t)?,
            },
            None => {
                let mut path = target_path(scenario, &link.sensing_id, t)?;
                let mut rng = stream(seed, &link.sensing_id, Purpose::ScatteringPhase, n);
                path.random_phases = vec![rng.random_range(0.0..TAU)];
                path
            }
        };
        let a_s = echo.amplitude(k, d_tx, d_echo);
        let a_c = comm.amplitude(k, d_tx, d_comm);
        Ok(Sample { cross: vec![a_s.conj() * a_c], reference: a_s.norm_sqr(), probe: vec![a_c.norm_sqr()] })
    };

    let samples: Vec<Sample> = (0..n_mc as u64).into_par_iter().map(draw).collect::<Result<_>>()?;
    let estimate = reduce(&samples)?;
    Ok(CrossCorrelation { t, link: link.clone(), value: estimate.values[0], std_error: estimate.std_errors[0], n_mc })
}
