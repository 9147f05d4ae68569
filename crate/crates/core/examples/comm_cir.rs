//! Communication channel realizations: fixed ray phases reused over time and antennas.

use isac_channel::comm::{comm_cir_with, CommRealization};
use isac_channel::path::TapMatrix;
use isac_channel::presets;

fn main() -> isac_channel::Result<()> {
    let scenario = presets::bistatic();
    let realization = CommRealization::draw(&scenario, 42)?;
    for set in &realization.ray_sets {
        println!("{}: {} rays, first phase {:.4} rad", set.cluster_id, set.points.len(), set.phases[0]);
    }
    for t in [0.0, 1.0, 2.0] {
        let cir = comm_cir_with(&scenario, &realization, t)?;
        let h: num_complex::Complex64 = cir.pair(1, 1).iter().map(|tap| tap.amplitude).sum();
        println!("t = {t} s: {} taps, narrowband h11 = {:.3e} ∠ {:+.3}", cir.pair(1, 1).len(), h.norm(), h.arg());
    }
    Ok(())
}
