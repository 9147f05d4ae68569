//! Correlation statistics and frequency responses of generated channels.
//!
//! Correlations follow the normalized form
//! `ρ = E[h*(a) h(b)] / sqrt(E|h(a)|² E|h(b)|²)`, where `a` is a reference
//! antenna pair at time `t` and `b` is shifted in antenna position (spatial
//! CCF) or time (temporal ACF). Expectations are sample means over seeded
//! realizations of the communication channel's random ray phases; sensing
//! components and the LoS path have no random state and use one evaluation.

mod cross;
mod freq;

pub use cross::{cross_channel_correlation, CrossCorrelation, CrossLink, LOS_ID};
pub use freq::{frequency_response, frequency_response_where, narrowband, FrequencyResponse, NarrowbandFading};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::comm::{comm_paths, draw_phases, CommRealization};
use crate::error::{Error, Result};
use crate::geometry::{UlaConfig, Vec3};
use crate::path::{PathSnapshot, PathSource};
use crate::scenario::Scenario;
use crate::sensing::sensing_paths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    SensingTerminal,
    SensingStatic,
    SensingMobile,
    SensingTotal,
    CommLos,
    CommStatic,
    CommMobile,
    CommTotal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Sensing,
    Communication,
}

impl Component {
    pub const ALL: [Component; 8] = [
        Component::SensingTerminal,
        Component::SensingStatic,
        Component::SensingMobile,
        Component::SensingTotal,
        Component::CommLos,
        Component::CommStatic,
        Component::CommMobile,
        Component::CommTotal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::SensingTerminal => "sensing_terminal",
            Component::SensingStatic => "sensing_static",
            Component::SensingMobile => "sensing_mobile",
            Component::SensingTotal => "sensing_total",
            Component::CommLos => "comm_los",
            Component::CommStatic => "comm_static",
            Component::CommMobile => "comm_mobile",
            Component::CommTotal => "comm_total",
        }
    }

    pub fn channel(self) -> ChannelKind {
        match self {
            Component::SensingTerminal
            | Component::SensingStatic
            | Component::SensingMobile
            | Component::SensingTotal => ChannelKind::Sensing,
            _ => ChannelKind::Communication,
        }
    }

    pub fn includes(self, source: &PathSource) -> bool {
        use PathSource::*;
        match self {
            Component::SensingTerminal => matches!(source, Terminal),
            Component::SensingStatic => matches!(source, StaticTarget(_)),
            Component::SensingMobile => matches!(source, MobileTarget(_)),
            Component::SensingTotal => matches!(source, Terminal | StaticTarget(_) | MobileTarget(_)),
            Component::CommLos => matches!(source, LineOfSight),
            Component::CommStatic => matches!(source, StaticCluster(_)),
            Component::CommMobile => matches!(source, MobileCluster(_)),
            Component::CommTotal => matches!(source, LineOfSight | StaticCluster(_) | MobileCluster(_)),
        }
    }

    /// No random variable enters the component, so its expectation is a single evaluation.
    pub fn is_deterministic(self) -> bool {
        self.channel() == ChannelKind::Sensing || self == Component::CommLos
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Component::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Domain(format!("unknown component `{s}`")))
    }
}

/// What a realization redraws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ensemble {
    /// Ray phases only; ray points stay at the seed's base placement.
    #[default]
    PhasesOnly,
    /// Ray phases and ray points.
    Full,
}

/// How taps of the same antenna pair are combined before correlating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathCoupling {
    /// Distinct paths are treated as uncorrelated: the numerator sums
    /// `a_k*(a) a_k(b)` over paths `k` matched by identity.
    #[default]
    PerPath,
    /// Taps are first summed into the narrowband gain `h = Σ_k a_k`.
    Coherent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationOptions {
    pub ensemble: Ensemble,
    pub coupling: PathCoupling,
    /// Reference transmit antenna, 1-based.
    pub tx_antenna: usize,
    /// Reference receive antenna (echo or communication array), 1-based.
    pub rx_antenna: usize,
}

impl Default for CorrelationOptions {
    fn default() -> Self {
        Self { ensemble: Ensemble::PhasesOnly, coupling: PathCoupling::PerPath, tx_antenna: 1, rx_antenna: 1 }
    }
}

/// Antenna offset in carrier wavelengths along the transmit and receive arrays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialLag {
    pub dp: f64,
    pub dq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LagGrid {
    Spatial(Vec<SpatialLag>),
    /// Seconds.
    Temporal(Vec<f64>),
}

impl LagGrid {
    pub fn len(&self) -> usize {
        match self {
            LagGrid::Spatial(v) => v.len(),
            LagGrid::Temporal(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSeries {
    pub t: f64,
    pub component: Component,
    pub lags: LagGrid,
    pub values: Vec<Complex64>,
    /// Delta-method standard error of |ρ| per lag; zero for single evaluations.
    pub std_errors: Vec<f64>,
    pub n_mc: usize,
}

impl CorrelationSeries {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }
}

/// `n + 1` evenly spaced points from 0 to `max`.
pub fn linear_grid(max: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![0.0];
    }
    (0..=steps).map(|i| max * i as f64 / steps as f64).collect()
}

/// Receive-array offsets `dq` with no transmit offset.
pub fn receive_lags(dq: &[f64]) -> Vec<SpatialLag> {
    dq.iter().map(|&dq| SpatialLag { dp: 0.0, dq }).collect()
}

/// Time-varying spatial cross-correlation at time `t`.
pub fn spatial_ccf(
    scenario: &Scenario,
    component: Component,
    t: f64,
    lags: &[SpatialLag],
    n_mc: usize,
    seed: u64,
    options: &CorrelationOptions,
) -> Result<CorrelationSeries> {
    let lambda = scenario.wavelength();
    let (tx, rx) = arrays(scenario, component);
    check_antenna(tx, options.tx_antenna)?;
    check_antenna(rx, options.rx_antenna)?;
    let (p, q) = (options.tx_antenna as f64, options.rx_antenna as f64);
    let reference = Probe { time: 0, d_tx: tx.displacement_at(p), d_rx: rx.displacement_at(q) };
    let probes = lags
        .iter()
        .map(|lag| {
            if !(lag.dp.is_finite() && lag.dq.is_finite()) {
                return Err(Error::Domain("spatial lags must be finite".into()));
            }
            Ok(Probe {
                time: 0,
                d_tx: tx.displacement_at(p + lag.dp * lambda / tx.spacing),
                d_rx: rx.displacement_at(q + lag.dq * lambda / rx.spacing),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let estimate = estimate(scenario, component, &[t], reference, &probes, n_mc, seed, options)?;
    Ok(estimate.into_series(t, component, LagGrid::Spatial(lags.to_vec())))
}

/// Time-varying temporal auto-correlation at time `t` for lags `dts` (seconds).
/// Lags may be negative as long as `t + Δt ≥ 0`.
pub fn temporal_acf(
    scenario: &Scenario,
    component: Component,
    t: f64,
    dts: &[f64],
    n_mc: usize,
    seed: u64,
    options: &CorrelationOptions,
) -> Result<CorrelationSeries> {
    let (tx, rx) = arrays(scenario, component);
    check_antenna(tx, options.tx_antenna)?;
    check_antenna(rx, options.rx_antenna)?;
    let d_tx = tx.displacement_at(options.tx_antenna as f64);
    let d_rx = rx.displacement_at(options.rx_antenna as f64);
    let mut times = vec![t];
    let mut probes = Vec::with_capacity(dts.len());
    for &dt in dts {
        let at = t + dt;
        if !(at >= 0.0 && at.is_finite()) {
            return Err(Error::Domain(format!("t + Δt = {at} must be finite and non-negative")));
        }
        let slot = match times.iter().position(|&x| x == at) {
            Some(i) => i,
            None => {
                times.push(at);
                times.len() - 1
            }
        };
        probes.push(Probe { time: slot, d_tx, d_rx });
    }
    let reference = Probe { time: 0, d_tx, d_rx };
    let estimate = estimate(scenario, component, &times, reference, &probes, n_mc, seed, options)?;
    Ok(estimate.into_series(t, component, LagGrid::Temporal(dts.to_vec())))
}

fn arrays(scenario: &Scenario, component: Component) -> (&UlaConfig, &UlaConfig) {
    let n = &scenario.nodes;
    match component.channel() {
        ChannelKind::Sensing => (&n.bs, &n.echo_rx),
        ChannelKind::Communication => (&n.bs, &n.comm_rx),
    }
}

fn check_antenna(ula: &UlaConfig, index: usize) -> Result<()> {
    if index == 0 || index > ula.element_count {
        return Err(Error::Domain(format!("antenna {index} outside 1..={}", ula.element_count)));
    }
    Ok(())
}

/// An evaluation point: a time slot and antenna displacements.
#[derive(Debug, Clone, Copy)]
struct Probe {
    time: usize,
    d_tx: Vec3,
    d_rx: Vec3,
}

/// Per-realization sums entering the estimator.
#[derive(Debug, Clone)]
pub(crate) struct Sample {
    /// Numerators, one per probe.
    pub cross: Vec<Complex64>,
    /// Reference power.
    pub reference: f64,
    /// Powers at each probe.
    pub probe: Vec<f64>,
}

pub(crate) struct Estimate {
    pub values: Vec<Complex64>,
    pub std_errors: Vec<f64>,
    pub n: usize,
}

impl Estimate {
    fn into_series(self, t: f64, component: Component, lags: LagGrid) -> CorrelationSeries {
        CorrelationSeries { t, component, lags, values: self.values, std_errors: self.std_errors, n_mc: self.n }
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

fn mean(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    let mut acc = Compensated::default();
    values.for_each(|v| acc.add(v));
    acc.value() / n as f64
}

/// Combines per-realization sums into ρ and its standard error, in sample order.
pub(crate) fn reduce(samples: &[Sample]) -> Result<Estimate> {
    let n = samples.len();
    let lags = samples.first().map_or(0, |s| s.cross.len());
    let a = mean(samples.iter().map(|s| s.reference), n);
    if !(a > 0.0) {
        return Err(Error::UndefinedCorrelation("reference power is zero".into()));
    }
    let mut values = Vec::with_capacity(lags);
    let mut std_errors = Vec::with_capacity(lags);
    for j in 0..lags {
        let re = mean(samples.iter().map(|s| s.cross[j].re), n);
        let im = mean(samples.iter().map(|s| s.cross[j].im), n);
        let b = mean(samples.iter().map(|s| s.probe[j]), n);
        if !(b > 0.0) {
            return Err(Error::UndefinedCorrelation(format!("power at lag {j} is zero")));
        }
        let norm = a.sqrt() * b.sqrt();
        let rho = Complex64::new(re, im) / norm;
        values.push(rho);
        std_errors.push(if n < 2 { 0.0 } else { std_error(samples, j, rho, norm, a, b) });
    }
    Ok(Estimate { values, std_errors, n })
}

/// Linearized (delta-method) standard error of |ρ̂|, or of ρ̂ itself when ρ̂ ≈ 0.
fn std_error(samples: &[Sample], j: usize, rho: Complex64, norm: f64, a: f64, b: f64) -> f64 {
    let n = samples.len() as f64;
    let influence = samples.iter().map(|s| s.cross[j] / norm - rho * (0.5 * (s.reference / a + s.probe[j] / b)));
    let variance = if rho.norm() > 1e-12 {
        let u = rho.conj() / rho.norm();
        let w: Vec<f64> = influence.map(|z| (u * z).re).collect();
        sample_variance(&w)
    } else {
        let z: Vec<Complex64> = influence.collect();
        sample_variance(&z.iter().map(|c| c.re).collect::<Vec<_>>())
            + sample_variance(&z.iter().map(|c| c.im).collect::<Vec<_>>())
    };
    (variance / n).sqrt()
}

fn sample_variance(w: &[f64]) -> f64 {
    let n = w.len();
    let m = mean(w.iter().copied(), n);
    mean(w.iter().map(|x| (x - m) * (x - m)), n) * n as f64 / (n - 1) as f64
}

/// Paths of `component` at time `t` for one realization of the communication channel.
fn component_paths(
    scenario: &Scenario,
    component: Component,
    realization: Option<&CommRealization>,
    t: f64,
) -> Result<Vec<PathSnapshot>> {
    let paths = match (component.channel(), realization) {
        (ChannelKind::Sensing, _) => sensing_paths(scenario, t)?,
        (ChannelKind::Communication, Some(r)) => comm_paths(scenario, r, t)?,
        (ChannelKind::Communication, None) => {
            return Err(Error::Config("communication paths need a realization".into()))
        }
    };
    Ok(paths.into_iter().filter(|p| component.includes(&p.source)).collect())
}

/// Per-ray terms of every path at every probe: `terms[probe][path][ray]`.
fn probe_terms(k: f64, snapshots: &[Vec<PathSnapshot>], probes: &[Probe]) -> Vec<Vec<Vec<Complex64>>> {
    probes
        .iter()
        .map(|pr| snapshots[pr.time].iter().map(|path| path.ray_terms(k, pr.d_tx, pr.d_rx).collect()).collect())
        .collect()
}

fn sample_from(
    snapshots: &[Vec<PathSnapshot>],
    reference: &[Vec<Complex64>],
    terms: &[Vec<Vec<Complex64>>],
    probes: &[Probe],
    phases: &[Vec<f64>],
    coupling: PathCoupling,
) -> Sample {
    let amplitudes = |time: usize, per_path: &[Vec<Complex64>]| -> Vec<Complex64> {
        snapshots[time]
            .iter()
            .zip(per_path)
            .zip(phases)
            .map(|((path, t), ph)| path.combine(t.iter().copied(), ph))
            .collect()
    };
    let a_ref = amplitudes(0, reference);
    let mut cross = Vec::with_capacity(probes.len());
    let mut probe = Vec::with_capacity(probes.len());
    let reference_power = match coupling {
        PathCoupling::PerPath => a_ref.iter().map(|a| a.norm_sqr()).sum(),
        PathCoupling::Coherent => a_ref.iter().sum::<Complex64>().norm_sqr(),
    };
    for (pr, t) in probes.iter().zip(terms) {
        let a = amplitudes(pr.time, t);
        match coupling {
            PathCoupling::PerPath => {
                cross.push(a_ref.iter().zip(&a).map(|(r, x)| r.conj() * x).sum());
                probe.push(a.iter().map(|x| x.norm_sqr()).sum());
            }
            PathCoupling::Coherent => {
                let h_ref: Complex64 = a_ref.iter().sum();
                let h: Complex64 = a.iter().sum();
                cross.push(h_ref.conj() * h);
                probe.push(h.norm_sqr());
            }
        }
    }
    Sample { cross, reference: reference_power, probe }
}

#[allow(clippy::too_many_arguments)]
fn estimate(
    scenario: &Scenario,
    component: Component,
    times: &[f64],
    reference: Probe,
    probes: &[Probe],
    n_mc: usize,
    seed: u64,
    options: &CorrelationOptions,
) -> Result<Estimate> {
    if n_mc == 0 {
        return Err(Error::Domain("ensemble size must be at least one".into()));
    }
    let k = scenario.carrier.wavenumber();
    let base = match component.channel() {
        ChannelKind::Communication => Some(CommRealization::draw(scenario, seed)?),
        ChannelKind::Sensing => None,
    };
    let snapshots_for = |r: Option<&CommRealization>| -> Result<Vec<Vec<PathSnapshot>>> {
        times.iter().map(|&t| component_paths(scenario, component, r, t)).collect()
    };
    let snapshots = snapshots_for(base.as_ref())?;
    if snapshots[0].is_empty() {
        return Err(Error::UndefinedCorrelation(format!("component {component} has no paths")));
    }

    let n_mc = if component.is_deterministic() { 1 } else { n_mc };
    let coupling = options.coupling;

    match options.ensemble {
        Ensemble::PhasesOnly => {
            let ref_terms = &probe_terms(k, &snapshots, &[reference])[0];
            let terms = probe_terms(k, &snapshots, probes);
            let ids: Vec<Option<&str>> = snapshots[0]
                .iter()
                .map(|p| if p.random_phases.is_empty() { None } else { p.source.scatterer_id() })
                .collect();
            let ray_counts: Vec<usize> = snapshots[0].iter().map(|p| p.random_phases.len()).collect();
            let samples: Vec<Sample> = (0..n_mc as u64)
                .into_par_iter()
                .map(|draw| {
                    let phases: Vec<Vec<f64>> = ids
                        .iter()
                        .zip(&ray_counts)
                        .map(|(id, &n)| match id {
                            Some(id) => draw_phases(seed, id, draw, n),
                            None => Vec::new(),
                        })
                        .collect();
                    sample_from(&snapshots, ref_terms, &terms, probes, &phases, coupling)
                })
                .collect();
            reduce(&samples)
        }
        Ensemble::Full => {
            let samples: Vec<Sample> = (0..n_mc as u64)
                .into_par_iter()
                .map(|draw| -> Result<Sample> {
                    let snaps = match component.channel() {
                        ChannelKind::Communication => {
                            let r = CommRealization::draw_indexed(scenario, seed, draw, draw)?;
                            snapshots_for(Some(&r))?
                        }
                        ChannelKind::Sensing => snapshots.clone(),
                    };
                    let ref_terms = &probe_terms(k, &snaps, &[reference])[0];
                    let terms = probe_terms(k, &snaps, probes);
                    let phases: Vec<Vec<f64>> = snaps[0].iter().map(|p| p.random_phases.clone()).collect();
                    Ok(sample_from(&snaps, ref_terms, &terms, probes, &phases, coupling))
                })
                .collect::<Result<_>>()?;
            reduce(&samples)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(cross: f64, reference: f64, probe: f64) -> Sample {
        Sample { cross: vec![Complex64::new(cross, 0.0)], reference, probe: vec![probe] }
    }

    #[test]
    fn component_names_round_trip() {
        for c in Component::ALL {
            assert_eq!(c.name().parse::<Component>().unwrap(), c);
        }
        assert!("comm_everything".parse::<Component>().is_err());
    }

    #[test]
    fn totals_cover_parts() {
        let sources = [
            PathSource::Terminal,
            PathSource::StaticTarget("a".into()),
            PathSource::MobileTarget("b".into()),
            PathSource::LineOfSight,
            PathSource::StaticCluster("c".into()),
            PathSource::MobileCluster("d".into()),
        ];
        for s in &sources {
            let parts = Component::ALL.iter().filter(|c| c.includes(s)).count();
            assert_eq!(parts, 2, "{s:?}");
        }
    }

    #[test]
    fn reduce_single_sample_has_zero_error() {
        let e = reduce(&[sample(2.0, 2.0, 2.0)]).unwrap();
        assert!((e.values[0] - 1.0).norm() < 1e-15);
        assert_eq!(e.std_errors[0], 0.0);
    }

    #[test]
    fn reduce_rejects_zero_power() {
        assert!(matches!(reduce(&[sample(0.0, 0.0, 1.0)]), Err(Error::UndefinedCorrelation(_))));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = Compensated::default();
        acc.add(1e16);
        for _ in 0..10 {
            acc.add(1.0);
        }
        acc.add(-1e16);
        assert_eq!(acc.value(), 10.0);
    }

    #[test]
    fn grid_endpoints() {
        assert_eq!(linear_grid(2.0, 4), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(linear_grid(1.0, 0), vec![0.0]);
    }
}
