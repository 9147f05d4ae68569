//! Sensing channel taps of the bundled bistatic scenario.

use isac_channel::path::TapMatrix;
use isac_channel::presets;
use isac_channel::sensing::sensing_cir;

fn main() -> isac_channel::Result<()> {
    let scenario = presets::bistatic();
    for t in [0.0, 2.0] {
        let cir = sensing_cir(&scenario, t)?;
        println!("t = {t} s, antenna pair (1, 1):");
        for tap in cir.pair(1, 1) {
            println!(
                "  {:24} delay {:8.2} ns  |a|² {:.3e}  arg {:+.3}",
                tap.source.label(),
                tap.delay * 1e9,
                tap.amplitude.norm_sqr(),
                tap.amplitude.arg()
            );
        }
    }
    Ok(())
}
