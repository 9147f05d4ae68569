use rand_distr::{Distribution, UnitBall};

use crate::error::{Error, Result};
use crate::geometry::{propagate, Vec3};
use crate::rng::{stream, Purpose};
use crate::scenario::{CarrierConfig, Mobility, Scatterer};

/// One ray sub-scatterer of a cluster. It co-moves rigidly with the cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayPoint {
    pub initial_position: Vec3,
}

impl RayPoint {
    pub fn position_at(&self, owner: &Scatterer, t: f64) -> Vec3 {
        match owner.mobility {
            Mobility::Static => self.initial_position,
            Mobility::Mobile => propagate(self.initial_position, owner.motion, t),
        }
    }
}

/// Draws the `I` ray points of a cluster uniformly in the ball of radius
/// `r_c` around its initial position.
pub fn realize_rays(scatterer: &Scatterer, carrier: &CarrierConfig, seed: u64) -> Result<Vec<RayPoint>> {
    realize_rays_indexed(scatterer, carrier, seed, 0)
}

/// Like [`realize_rays`] for placement draw number `index`.
pub fn realize_rays_indexed(
    scatterer: &Scatterer,
    carrier: &CarrierConfig,
    seed: u64,
    index: u64,
) -> Result<Vec<RayPoint>> {
    let cluster =
        scatterer.cluster.ok_or_else(|| Error::Config(format!("`{}` is not a communication cluster", scatterer.id)))?;
    let radius = cluster.ray_extent.ok_or_else(|| Error::Config(format!("`{}` has no ray extent", scatterer.id)))?;
    if !(radius >= 0.0) {
        return Err(Error::Config(format!("`{}` has negative ray extent", scatterer.id)));
    }
    if carrier.ray_count == 0 {
        return Err(Error::Config("ray count must be at least one".into()));
    }
    let mut rng = stream(seed, &scatterer.id, Purpose::RayPlacement, index);
    let center = scatterer.initial_position;
    Ok((0..carrier.ray_count)
        .map(|_| {
            let [x, y, z]: [f64; 3] = UnitBall.sample(&mut rng);
            RayPoint { initial_position: center + Vec3::new(x, y, z) * radius }
        })
        .collect())
}
