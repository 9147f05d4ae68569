//! Resolvable paths and the taps they produce.
//!
//! A [`PathSnapshot`] is one path frozen at an instant: gain, delay and the
//! per-ray phases and directions. Taps for any pair of antenna displacements
//! follow from it by adding the array phase terms, so the same snapshot can
//! serve integer antenna pairs and the continuous spacing sweeps used by the
//! correlation estimators.

use num_complex::Complex64;

use crate::geometry::Vec3;

/// Where a tap comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathSource {
    /// Mobile receiver seen as a radar target.
    Terminal,
    StaticTarget(String),
    MobileTarget(String),
    LineOfSight,
    StaticCluster(String),
    MobileCluster(String),
}

impl PathSource {
    pub fn label(&self) -> String {
        match self {
            PathSource::Terminal => "terminal".into(),
            PathSource::StaticTarget(id) => format!("static_target:{id}"),
            PathSource::MobileTarget(id) => format!("mobile_target:{id}"),
            PathSource::LineOfSight => "los".into(),
            PathSource::StaticCluster(id) => format!("static_cluster:{id}"),
            PathSource::MobileCluster(id) => format!("mobile_cluster:{id}"),
        }
    }

    pub fn scatterer_id(&self) -> Option<&str> {
        match self {
            PathSource::StaticTarget(id)
            | PathSource::MobileTarget(id)
            | PathSource::StaticCluster(id)
            | PathSource::MobileCluster(id) => Some(id),
            PathSource::Terminal | PathSource::LineOfSight => None,
        }
    }
}

/// One tap of a tapped-delay-line channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Tap {
    /// Complex amplitude including path loss.
    pub amplitude: Complex64,
    /// Absolute delay, seconds.
    pub delay: f64,
    pub source: PathSource,
}

/// One ray of a path: deterministic phase (propagation and Doppler) and the
/// departure/arrival directions used for the array terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathRay {
    pub phase: f64,
    pub tx_direction: Vec3,
    pub rx_direction: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSnapshot {
    pub source: PathSource,
    pub t: f64,
    /// Power gain Ω including path loss.
    pub gain: f64,
    pub delay: f64,
    /// Amplitude scale applied to the ray sum: √Ω, or √(Ω/I) for clusters.
    pub scale: f64,
    pub rays: Vec<PathRay>,
    /// Random ray phases; empty for deterministic paths.
    pub random_phases: Vec<f64>,
}

impl PathSnapshot {
    /// Per-ray complex terms `e^{j(phase + k⟨e_T,d_T⟩ + k⟨e_R,d_R⟩)}`, random phases excluded.
    pub fn ray_terms(&self, wavenumber: f64, d_tx: Vec3, d_rx: Vec3) -> impl Iterator<Item = Complex64> + '_ {
        self.rays.iter().map(move |r| {
            let array = wavenumber * r.tx_direction.dot(d_tx) + wavenumber * r.rx_direction.dot(d_rx);
            Complex64::cis(r.phase + array)
        })
    }

    /// Sums ray terms weighted by the random phases `phases` (ignored when empty).
    pub fn combine(&self, terms: impl Iterator<Item = Complex64>, phases: &[f64]) -> Complex64 {
        let sum: Complex64 =
            if phases.is_empty() { terms.sum() } else { terms.zip(phases).map(|(c, &p)| Complex64::cis(p) * c).sum() };
        sum * self.scale
    }

    /// Complex amplitude between the antennas displaced by `d_tx` and `d_rx`
    /// from their array centers.
    pub fn amplitude(&self, wavenumber: f64, d_tx: Vec3, d_rx: Vec3) -> Complex64 {
        self.combine(self.ray_terms(wavenumber, d_tx, d_rx), &self.random_phases)
    }

    pub fn tap(&self, wavenumber: f64, d_tx: Vec3, d_rx: Vec3) -> Tap {
        Tap { amplitude: self.amplitude(wavenumber, d_tx, d_rx), delay: self.delay, source: self.source.clone() }
    }
}

/// Per-antenna-pair tap lists.
pub trait TapMatrix {
    fn time(&self) -> f64;
    fn tx_count(&self) -> usize;
    fn rx_count(&self) -> usize;
    /// Taps between transmit antenna `p` and receive antenna `q` (both 1-based).
    fn pair(&self, p: usize, q: usize) -> &[Tap];
}

/// Builds the `[p][q]` tap lists from a set of snapshots.
pub(crate) fn tap_grid(paths: &[PathSnapshot], wavenumber: f64, tx: &[Vec3], rx: &[Vec3]) -> Vec<Vec<Vec<Tap>>> {
    tx.iter()
        .map(|&dp| rx.iter().map(|&dq| paths.iter().map(|path| path.tap(wavenumber, dp, dq)).collect()).collect())
        .collect()
}
