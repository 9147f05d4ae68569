//! Spatial cross-correlation against receive-antenna offset.

use isac_channel::presets;
use isac_channel::stats::{linear_grid, receive_lags, spatial_ccf, Component, CorrelationOptions};

fn main() -> isac_channel::Result<()> {
    let scenario = presets::bistatic();
    let dq = linear_grid(1.0, 10);
    let options = CorrelationOptions::default();
    let components = [Component::CommStatic, Component::CommMobile, Component::SensingStatic, Component::SensingMobile];
    print!("{:>6}", "Δq/λ");
    for c in components {
        print!("{:>16}", c.name());
    }
    println!();
    let series: Vec<_> = components
        .iter()
        .map(|&c| spatial_ccf(&scenario, c, 2.0, &receive_lags(&dq), 2000, 7, &options))
        .collect::<Result<_, _>>()?;
    for (i, lag) in dq.iter().enumerate() {
        print!("{lag:>6.2}");
        for s in &series {
            print!("{:>16.4}", s.values[i].norm());
        }
        println!();
    }
    Ok(())
}
