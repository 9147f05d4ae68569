//! Runs the standard spatial and temporal sweeps and writes their CSV files.
//!
//! `cargo run --release --example figure_sweeps -- out_dir`

use isac_channel::cli::{run, Command, RunSpec};

fn main() -> isac_channel::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "sweeps".into());
    for command in [Command::Fig2, Command::Fig3] {
        let mut spec = RunSpec::new(command);
        spec.out = out.clone().into();
        for file in run(&spec)? {
            println!("wrote {}", file.display());
        }
    }
    Ok(())
}
