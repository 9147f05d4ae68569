//! Loading, validating and adjusting a scenario description.
//!
//! Run with a path to use your own file:
//! `cargo run --example scenario_file -- crates/core/scenarios/vehicular_28ghz_monostatic.json`

use isac_channel::presets;
use isac_channel::scenario::{load_scenario, lookup_rcs, parse_scenario, RcsRegistry};

fn main() -> isac_channel::Result<()> {
    let scenario = match std::env::args().nth(1) {
        Some(path) => load_scenario(path)?,
        None => parse_scenario(presets::BISTATIC_JSON)?,
    };
    println!("{:?} sensing, {} scatterers, seed {}", scenario.sensing_mode, scenario.scatterers.len(), scenario.seed);
    for s in &scenario.scatterers {
        println!("  {:15} target {:5} cluster {:5} {:?}", s.id, s.is_target(), s.is_cluster(), s.mobility);
    }
    let violations = scenario.validate();
    println!("violations: {}", violations.len());

    let mut registry = RcsRegistry::default();
    registry.register("scooter", 0.8)?;
    for name in ["automobile", "pickup_truck", "scooter"] {
        println!("RCS of {name}: {} m²", lookup_rcs(&registry, name)?);
    }
    match lookup_rcs(&registry, "zeppelin") {
        Err(e) => println!("zeppelin: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
