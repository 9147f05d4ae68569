//! Correlation between sensing and communication taps through shared scatterers.

use isac_channel::presets;
use isac_channel::stats::{cross_channel_correlation, CorrelationOptions, CrossLink};

fn main() -> isac_channel::Result<()> {
    let scenario = presets::bistatic();
    let options = CorrelationOptions::default();
    let links = [
        CrossLink::first_shared(&scenario)?,
        CrossLink::new("lead_car", "lead_car"),
        CrossLink::new("parked_car", "building_north"),
    ];
    for link in links {
        let x = cross_channel_correlation(&scenario, &link, 2.0, 4000, 7, &options)?;
        println!("{:>12} / {:<15} |ρ| = {:.4} ± {:.4}", link.sensing_id, link.comm_id, x.value.norm(), x.std_error);
    }
    Ok(())
}
