//! Temporal auto-correlation for communication and sensing components.

use isac_channel::presets;
use isac_channel::stats::{linear_grid, temporal_acf, Component, CorrelationOptions};

fn main() -> isac_channel::Result<()> {
    let scenario = presets::bistatic();
    let dts = linear_grid(5e-4, 10);
    let components = [Component::CommStatic, Component::CommMobile, Component::SensingMobile, Component::SensingTotal];
    let series: Vec<_> = components
        .iter()
        .map(|&c| temporal_acf(&scenario, c, 5.0, &dts, 2000, 7, &CorrelationOptions::default()))
        .collect::<Result<_, _>>()?;
    for (i, dt) in dts.iter().enumerate() {
        let row: Vec<String> = series.iter().map(|s| format!("{}={:.4}", s.component, s.values[i].norm())).collect();
        println!("Δt = {:6.3} ms  {}", dt * 1e3, row.join("  "));
    }
    Ok(())
}
