//! Sensing correlations with the echo receiver co-located or separated.

use isac_channel::presets;
use isac_channel::stats::{receive_lags, spatial_ccf, temporal_acf, Component, CorrelationOptions};

fn main() -> isac_channel::Result<()> {
    let options = CorrelationOptions::default();
    for (name, scenario) in [("monostatic", presets::monostatic()), ("bistatic", presets::bistatic())] {
        let ccf = spatial_ccf(&scenario, Component::SensingTotal, 2.0, &receive_lags(&[0.5, 1.0]), 1, 0, &options)?;
        let acf = temporal_acf(&scenario, Component::SensingTotal, 5.0, &[1e-4, 3e-4], 1, 0, &options)?;
        println!(
            "{name:>10}: CCF(0.5λ) {:.4}  CCF(1λ) {:.4}  ACF(0.1 ms) {:.4}  ACF(0.3 ms) {:.4}",
            ccf.values[0].norm(),
            ccf.values[1].norm(),
            acf.values[0].norm(),
            acf.values[1].norm()
        );
    }
    Ok(())
}
