//! Command-line front end: scenario validation, CIR dumps, correlation sweeps
//! and frequency responses written as CSV.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or usage error, 3 invalid
//! scenario, 4 degenerate geometry, 5 undefined correlation.

mod csv;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::comm::comm_cir;
use crate::error::{Error, Result};
use crate::path::TapMatrix;
use crate::presets;
use crate::scenario::{load_scenario, Scenario};
use crate::sensing::sensing_cir;
use crate::stats::{
    cross_channel_correlation, frequency_response_where, linear_grid, receive_lags, spatial_ccf, temporal_acf,
    ChannelKind, Component, CorrelationOptions, CorrelationSeries, CrossLink,
};

use csv::{fmt_f64, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Load and validate the scenario.
    Validate,
    /// Write sensing and communication tap lists.
    Cir,
    /// Spatial CCF over receive-antenna offsets.
    Ccf,
    /// Temporal ACF over time lags.
    Acf,
    /// Frequency response per antenna pair.
    Freq,
    /// Correlation between the echo and communication taps of the first shared scatterer.
    Xcorr,
    /// Standard spatial CCF sweep at t = 2 s.
    Fig2,
    /// Standard temporal ACF sweep at t = 5 s.
    Fig3,
}

/// One invocation. Output bytes depend only on the scenario and these fields.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "isac-sim", version, about = "Vehicular ISAC channel simulator")]
pub struct RunSpec {
    pub command: Command,
    /// Scenario JSON; the bundled bistatic layout when omitted.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Time instant, seconds.
    #[arg(long = "t", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long = "dt-max", default_value_t = 5e-4)]
    pub dt_max: f64,
    #[arg(long = "dt-steps", default_value_t = 50)]
    pub dt_steps: usize,
    /// Receive offset range, wavelengths.
    #[arg(long = "dq-max", default_value_t = 2.0)]
    pub dq_max: f64,
    #[arg(long = "dq-steps", default_value_t = 40)]
    pub dq_steps: usize,
    #[arg(long = "N-mc")]
    pub n_mc: Option<usize>,
    /// Root seed; the scenario's seed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated component selectors.
    #[arg(long, value_delimiter = ',', value_parser = parse_component)]
    pub component: Vec<Component>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Frequency half-span for `freq`, Hz.
    #[arg(long = "f-max", default_value_t = 5e7)]
    pub f_max: f64,
    #[arg(long = "f-steps", default_value_t = 200)]
    pub f_steps: usize,
    /// Worker threads; all cores when omitted. Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

fn parse_component(s: &str) -> std::result::Result<Component, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl RunSpec {
    pub fn new(command: Command) -> Self {
        Self::parse_from(["isac-sim", command.to_possible_value().expect("named").get_name()])
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Io(_) => 1,
        Error::Parse(_) | Error::UnknownTargetType(_) | Error::Domain(_) => 2,
        Error::Invalid(_) | Error::Config(_) => 3,
        Error::DegenerateGeometry(_) => 4,
        Error::UndefinedCorrelation(_) => 5,
    }
}

/// Parses `args` (program name first), runs, reports, and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let spec = match RunSpec::try_parse_from(args) {
        Ok(spec) => spec,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&spec) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            0
        }
        Err(e) => {
            eprintln!("isac-sim: {e}");
            exit_code(&e)
        }
    }
}

/// Loads the scenario named by `spec` (or the bundled one) and validates it.
pub fn load(spec: &RunSpec) -> Result<Scenario> {
    let scenario = match &spec.scenario {
        Some(path) => load_scenario(path)?,
        None => presets::bistatic(),
    };
    let violations = scenario.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations.into_iter().map(|v| format!("{}: {}", v.code, v.detail)).collect()));
    }
    Ok(scenario)
}

/// Executes `spec` and returns the files written.
pub fn run(spec: &RunSpec) -> Result<Vec<PathBuf>> {
    match spec.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(|| execute(spec)),
        None => execute(spec),
    }
}

fn execute(spec: &RunSpec) -> Result<Vec<PathBuf>> {
    let scenario = load(spec)?;
    let seed = spec.seed.unwrap_or(scenario.seed);
    let n_mc = spec.n_mc.unwrap_or(match spec.command {
        Command::Fig2 | Command::Fig3 => 5000,
        _ => 1000,
    });
    if spec.command != Command::Validate {
        std::fs::create_dir_all(&spec.out)?;
    }
    let options = CorrelationOptions::default();
    let t = |default: f64| spec.t.unwrap_or(default);

    match spec.command {
        Command::Validate => {
            println!("scenario ok: {} scatterers, {:?} sensing", scenario.scatterers.len(), scenario.sensing_mode);
            Ok(Vec::new())
        }
        Command::Cir => {
            let t = t(0.0);
            let sensing = write(&spec.out, "sensing_cir.csv", &cir_table(&sensing_cir(&scenario, t)?))?;
            let comm = write(&spec.out, "comm_cir.csv", &cir_table(&comm_cir(&scenario, seed, t)?))?;
            Ok(vec![sensing, comm])
        }
        Command::Ccf => {
            let components = selected(spec, &presets::fig2().components);
            let dq = linear_grid(spec.dq_max, spec.dq_steps);
            let series = components
                .iter()
                .map(|&c| spatial_ccf(&scenario, c, t(0.0), &receive_lags(&dq), n_mc, seed, &options))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![write(&spec.out, "ccf.csv", &series_table("lag_dq_wavelengths", &dq, &series))?])
        }
        Command::Acf => {
            let components = selected(spec, &presets::fig3().components);
            let dts = linear_grid(spec.dt_max, spec.dt_steps);
            let series = components
                .iter()
                .map(|&c| temporal_acf(&scenario, c, t(0.0), &dts, n_mc, seed, &options))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![write(&spec.out, "acf.csv", &series_table("lag_dt_seconds", &dts, &series))?])
        }
        Command::Freq => {
            let components = selected(spec, &[Component::CommTotal]);
            let channel = components[0].channel();
            if components.iter().any(|c| c.channel() != channel) {
                return Err(Error::Domain("freq components must belong to one channel".into()));
            }
            let f: Vec<f64> = linear_grid(2.0 * spec.f_max, spec.f_steps).iter().map(|x| x - spec.f_max).collect();
            let keep = |tap: &crate::path::Tap| components.iter().any(|c| c.includes(&tap.source));
            let t = t(0.0);
            let h = match channel {
                ChannelKind::Sensing => frequency_response_where(&sensing_cir(&scenario, t)?, &f, keep),
                ChannelKind::Communication => frequency_response_where(&comm_cir(&scenario, seed, t)?, &f, keep),
            };
            let mut table = Table::new(&["f_hz", "p", "q", "re", "im"]);
            for (p, row) in h.values.iter().enumerate() {
                for (q, values) in row.iter().enumerate() {
                    for (f, v) in h.frequencies.iter().zip(values) {
                        table.row(vec![
                            fmt_f64(*f),
                            (p + 1).to_string(),
                            (q + 1).to_string(),
                            fmt_f64(v.re),
                            fmt_f64(v.im),
                        ]);
                    }
                }
            }
            Ok(vec![write(&spec.out, "freq.csv", &table)?])
        }
        Command::Xcorr => {
            let link = CrossLink::first_shared(&scenario)?;
            let t = t(0.0);
            let x = cross_channel_correlation(&scenario, &link, t, n_mc, seed, &options)?;
            let mut table = Table::new(&["t_seconds", "sensing_id", "comm_id", "re", "im", "abs", "se"]);
            table.row(vec![
                fmt_f64(t),
                link.sensing_id,
                link.comm_id,
                fmt_f64(x.value.re),
                fmt_f64(x.value.im),
                fmt_f64(x.value.norm()),
                fmt_f64(x.std_error),
            ]);
            Ok(vec![write(&spec.out, "xcorr.csv", &table)?])
        }
        Command::Fig2 => {
            let sweep = presets::fig2();
            let dq = sweep.offsets();
            let series = sweep
                .components
                .iter()
                .map(|&c| spatial_ccf(&scenario, c, sweep.t, &receive_lags(&dq), n_mc, seed, &options))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![write(&spec.out, "fig2_ccf.csv", &series_table("lag_dq_wavelengths", &dq, &series))?])
        }
        Command::Fig3 => {
            let sweep = presets::fig3();
            let dts = sweep.lags();
            let series = sweep
                .components
                .iter()
                .map(|&c| temporal_acf(&scenario, c, sweep.t, &dts, n_mc, seed, &options))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![write(&spec.out, "fig3_acf.csv", &series_table("lag_dt_seconds", &dts, &series))?])
        }
    }
}

fn selected(spec: &RunSpec, default: &[Component]) -> Vec<Component> {
    if spec.component.is_empty() {
        default.to_vec()
    } else {
        spec.component.clone()
    }
}

fn write(dir: &Path, name: &str, table: &Table) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, table.render())?;
    Ok(path)
}

fn cir_table<M: TapMatrix>(cir: &M) -> Table {
    let mut table = Table::new(&["t", "p", "q", "tap", "source", "delay_s", "re", "im"]);
    for p in 1..=cir.tx_count() {
        for q in 1..=cir.rx_count() {
            for (k, tap) in cir.pair(p, q).iter().enumerate() {
                table.row(vec![
                    fmt_f64(cir.time()),
                    p.to_string(),
                    q.to_string(),
                    k.to_string(),
                    tap.source.label(),
                    fmt_f64(tap.delay),
                    fmt_f64(tap.amplitude.re),
                    fmt_f64(tap.amplitude.im),
                ]);
            }
        }
    }
    table
}

fn series_table(lag_name: &str, lags: &[f64], series: &[CorrelationSeries]) -> Table {
    let mut header = vec![lag_name.to_string()];
    for s in series {
        for suffix in ["re", "im", "abs", "se"] {
            header.push(format!("{}_{suffix}", s.component));
        }
    }
    let mut table = Table::with_header(header);
    for (i, lag) in lags.iter().enumerate() {
        let mut row = vec![fmt_f64(*lag)];
        for s in series {
            let v = s.values[i];
            row.extend([fmt_f64(v.re), fmt_f64(v.im), fmt_f64(v.norm()), fmt_f64(s.std_errors[i])]);
        }
        table.row(row);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::Invalid(vec![])), 3);
        assert_eq!(exit_code(&Error::DegenerateGeometry("x".into())), 4);
        assert_eq!(exit_code(&Error::UndefinedCorrelation("x".into())), 5);
    }

    #[test]
    fn flags_parse() {
        let spec = RunSpec::try_parse_from([
            "isac-sim",
            "ccf",
            "--N-mc",
            "50",
            "--seed",
            "7",
            "--component",
            "comm_static,sensing_total",
            "--dq-max",
            "1",
            "--t",
            "2",
        ])
        .unwrap();
        assert_eq!(spec.command, Command::Ccf);
        assert_eq!(spec.n_mc, Some(50));
        assert_eq!(spec.component, vec![Component::CommStatic, Component::SensingTotal]);
        assert_eq!(spec.t, Some(2.0));
        assert!(RunSpec::try_parse_from(["isac-sim", "ccf", "--component", "bogus"]).is_err());
    }

    #[test]
    fn new_uses_defaults() {
        let spec = RunSpec::new(Command::Fig3);
        assert_eq!(spec.command, Command::Fig3);
        assert_eq!(spec.out, PathBuf::from("."));
    }
}
