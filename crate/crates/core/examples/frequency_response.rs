//! Frequency response of the communication channel over a 100 MHz band.

use isac_channel::comm::comm_cir;
use isac_channel::presets;
use isac_channel::stats::{frequency_response, narrowband};

fn main() -> isac_channel::Result<()> {
    let scenario = presets::bistatic();
    let cir = comm_cir(&scenario, 1, 0.0)?;
    let freqs: Vec<f64> = (-10..=10).map(|i| i as f64 * 5e6).collect();
    let h = frequency_response(&cir, &freqs);
    for (f, v) in freqs.iter().zip(h.pair(1, 1)) {
        println!("{:+7.1} MHz  |H| = {:.3e}  {:.1} dB", f / 1e6, v.norm(), 20.0 * v.norm().log10());
    }
    println!("narrowband h11 = {:.3e}", narrowband(&cir).gains[0][0]);
    Ok(())
}
