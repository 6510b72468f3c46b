use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wavedof_core::modes::{enumerate_modes_with, max_degree, synthesize_ensemble, EnumerateOptions, ModeIndex};
use wavedof_core::numfmt::fmt_sig;
use wavedof_core::rankcheck::{
    build_grid, eigen_spectrum_with, ensemble_spectrum, gram_of_modes, recommended_resolution,
};
use wavedof_core::{
    bound_report, BoundReport, Dimension, Error, PhysicalConfig, Quantity, RankPolicy, Resolution, SpectrumReport,
};

use crate::config::ConfigArgs;
use crate::metadata::{config_echo, to_json, RunMetadata};
use crate::svg;
use crate::sweep::{figure_preset, Axis, Figure, Param, SweepSpec, SweepTable};

#[derive(Debug, Parser)]
#[command(
    name = "wavedof",
    version,
    about = "Degrees-of-freedom bounds for band-limited wave fields in a ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every bound for one configuration.
    Bounds(BoundsArgs),
    /// Two-axis parameter sweep to CSV.
    Sweep(SweepArgs),
    /// Enumerate the mode basis to CSV.
    Modes(ModesArgs),
    /// Gram and ensemble rank experiment, written as JSON.
    Verify(VerifyArgs),
    /// Preset sweep for one of the reference figures.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    /// JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Outer axis, `PARAM:MIN:MAX:COUNT[:lin|log]` with PARAM one of R, W, T, F0.
    #[arg(long)]
    pub axis1: Axis,
    /// Inner axis, same syntax.
    #[arg(long)]
    pub axis2: Axis,
    /// Comma-separated report fields.
    #[arg(long, value_delimiter = ',', default_value = "thm2")]
    pub quantities: Vec<String>,
    /// Fixed values for the parameters not on an axis.
    #[command(flatten)]
    pub cfg: ConfigArgs,
    #[command(flatten)]
    pub output: SweepOutput,
}

#[derive(Debug, Args)]
pub struct SweepOutput {
    /// CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG heatmap of the first quantity.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    pub figure: Figure,
    /// Points per axis.
    #[arg(long, default_value_t = 25)]
    pub count: usize,
    #[command(flatten)]
    pub output: SweepOutput,
}

#[derive(Debug, Args)]
pub struct ModesArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    #[arg(long, default_value = "3d")]
    pub dim: Dimension,
    /// CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Refuse to enumerate more than this many modes.
    #[arg(long, default_value_t = wavedof_core::modes::DEFAULT_MODE_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    #[arg(long, default_value = "2d")]
    pub dim: Dimension,
    /// Plane waves per synthesized field.
    #[arg(long, default_value_t = 50)]
    pub waves: usize,
    /// Ensemble size.
    #[arg(long, default_value_t = 200)]
    pub fields: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `RADIAL,ANGULAR,TIME` node counts; chosen from the config when omitted.
    #[arg(long)]
    pub resolution: Option<String>,
    /// `EPSILON,ETA` for threshold and energy rank.
    #[arg(long)]
    pub policy: Option<String>,
    /// JSON path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Largest basis the dense Gram eigen-solve is asked to handle.
pub const VERIFY_MODE_CAP: u64 = 4000;

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bounds(a) => print!("{}", cmd_bounds(&a)?),
        Command::Sweep(a) => {
            let spec = sweep_spec(&a)?;
            write_sweep(&spec, &a.output)?;
        }
        Command::Figure(a) => {
            write_sweep(&figure_preset(a.figure, a.count), &a.output)?;
        }
        Command::Modes(a) => println!("{}", cmd_modes(&a)?),
        Command::Verify(a) => {
            let json = cmd_verify(&a)?;
            emit(a.out.as_deref(), &json)?;
        }
    }
    Ok(())
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    metadata: RunMetadata,
    report: &'a BoundReport,
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<String> {
    let cfg = args.cfg.resolve()?;
    let report = bound_report(&cfg)?;
    let metadata = RunMetadata::new(config_echo(&cfg), None);
    if args.json {
        return Ok(to_json(&BoundsJson {
            metadata,
            report: &report,
        })?);
    }
    let mut s = String::new();
    for line in metadata.comment_lines() {
        writeln!(s, "{line}")?;
    }
    for name in BoundReport::QUANTITIES {
        let v = match report.quantity(name) {
            Some(Quantity::Count(n)) => n.to_string(),
            Some(Quantity::Real(x)) => fmt_sig(x),
            None => unreachable!(),
        };
        writeln!(s, "{name:<12}{v}")?;
    }
    Ok(s)
}

/// Base config for a sweep. `F0` may come from an axis instead of a flag.
pub fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec> {
    let on_axis = |p| args.axis1.param == p || args.axis2.param == p;
    let mut cfg_args = args.cfg.clone();
    if on_axis(Param::F0) && cfg_args.center_freq.is_none() {
        cfg_args.center_freq = Some(args.axis1.max.max(args.axis2.max));
    }
    // Axis parameters are overwritten per cell; only the rest must validate.
    if on_axis(Param::W) {
        cfg_args.half_bandwidth = Some(0.0);
    }
    if on_axis(Param::R) {
        cfg_args.radius = Some(0.0);
    }
    if on_axis(Param::T) {
        cfg_args.duration = Some(0.0);
    }
    let spec = SweepSpec {
        axis1: args.axis1,
        axis2: args.axis2,
        base: cfg_args.resolve()?,
        quantities: args.quantities.clone(),
    };
    spec.validate()?;
    Ok(spec)
}

/// Evaluate, stamp metadata, and write CSV (and SVG when asked).
pub fn write_sweep(spec: &SweepSpec, out: &SweepOutput) -> Result<SweepTable> {
    let mut table = spec.evaluate()?;
    table.comments = RunMetadata::new(spec.echo(), None).comment_lines();
    emit(out.out.as_deref(), &table.render()?)?;
    if let Some(path) = &out.svg {
        let svg = svg::heatmap(&table, &spec.quantities[0])?;
        std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(table)
}

/// Writes the mode table; returns the row count.
pub fn cmd_modes(args: &ModesArgs) -> Result<usize> {
    let cfg = args.cfg.resolve()?;
    let modes = enumerate_modes_with(
        args.dim,
        &cfg,
        EnumerateOptions {
            cap: args.cap,
            ..Default::default()
        },
    )?;
    let mut echo = config_echo(&cfg);
    echo.insert("dim".into(), args.dim.to_string());
    let mut text = String::new();
    for line in RunMetadata::new(echo, None).comment_lines() {
        writeln!(text, "{line}")?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["i", "n", "m", "f_hz", "k_rad_per_m"])?;
    for m in &modes {
        w.write_record(mode_row(m, &cfg))?;
    }
    text.push_str(std::str::from_utf8(&w.into_inner()?)?);
    std::fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    Ok(modes.len())
}

fn mode_row(m: &ModeIndex, cfg: &PhysicalConfig) -> [String; 5] {
    let f = m.bin.frequency(cfg);
    [
        m.bin.index().map(|i| i.to_string()).unwrap_or_default(),
        m.n.to_string(),
        m.m.to_string(),
        fmt_sig(f),
        fmt_sig(cfg.wavenumber(f)),
    ]
}

fn parse_resolution(s: &str) -> Result<Resolution> {
    let bad = || Error::InvalidConfig(format!("resolution '{s}': expected RADIAL,ANGULAR,TIME"));
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    match parts[..] {
        [r, a, t] if r > 0 && a > 0 && t > 0 => Ok(Resolution::new(r, a, t)),
        _ => Err(bad().into()),
    }
}

fn parse_policy(s: &str) -> Result<RankPolicy> {
    let bad = || Error::InvalidPolicy(format!("'{s}': expected EPSILON,ETA"));
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    match parts[..] {
        [eps, eta] => Ok(RankPolicy::new(eps, eta)?),
        _ => Err(bad().into()),
    }
}

/// Default grid for verification: resolves the enumerated modes and the
/// circular/spherical orders a plane wave at the upper band edge excites
/// over the region (about `kR`, plus a margin).
pub fn verify_resolution(modes: &[ModeIndex], cfg: &PhysicalConfig) -> Resolution {
    let rec = recommended_resolution(modes, cfg);
    let kr = cfg.wavenumber(cfg.upper_edge()) * cfg.radius;
    let field_orders = kr.ceil() as usize + 10;
    let angular = rec
        .angular
        .max(2 * field_orders + 1)
        .max(2 * max_degree(modes) as usize + 1);
    Resolution::new(rec.radial, angular, rec.time)
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub metadata: RunMetadata,
    pub dimension: String,
    pub resolution: Resolution,
    pub waves: usize,
    pub fields: usize,
    pub bounds: BoundReport,
    /// Enumerated basis size, equal to the exact mode sum in `dimension`.
    pub mode_count: u64,
    pub gram: SpectrumReport,
    pub ensemble: SpectrumReport,
    /// Ensemble energy-rank over `mode_count`.
    pub ratio: f64,
}

pub fn verify_report(args: &VerifyArgs) -> Result<VerifyReport> {
    let cfg = args.cfg.resolve()?;
    let policy = match &args.policy {
        Some(s) => parse_policy(s)?,
        None => RankPolicy::default(),
    };
    if args.waves == 0 || args.fields == 0 {
        return Err(Error::InvalidConfig("--waves and --fields must be >= 1".into()).into());
    }
    let bounds = bound_report(&cfg)?;
    let modes = enumerate_modes_with(
        args.dim,
        &cfg,
        EnumerateOptions {
            cap: VERIFY_MODE_CAP,
            ..Default::default()
        },
    )?;
    let resolution = match &args.resolution {
        Some(s) => parse_resolution(s)?,
        None => verify_resolution(&modes, &cfg),
    };
    let grid = build_grid(args.dim, &cfg, resolution)?;
    let gram = eigen_spectrum_with(&gram_of_modes(&modes, &grid, &cfg)?, policy)?;
    let fields = synthesize_ensemble(args.dim, &cfg, args.waves, args.fields, args.seed);
    let ensemble = ensemble_spectrum(&fields, &grid, policy)?;

    let mut echo: BTreeMap<String, String> = config_echo(&cfg);
    echo.insert("dim".into(), args.dim.to_string());
    echo.insert("waves".into(), args.waves.to_string());
    echo.insert("fields".into(), args.fields.to_string());
    echo.insert("resolution".into(), resolution.to_string());
    echo.insert(
        "policy".into(),
        format!("{},{}", fmt_sig(policy.epsilon), fmt_sig(policy.eta)),
    );
    let mode_count = modes.len() as u64;
    Ok(VerifyReport {
        metadata: RunMetadata::new(echo, Some(args.seed)),
        dimension: args.dim.to_string(),
        resolution,
        waves: args.waves,
        fields: args.fields,
        bounds,
        mode_count,
        ratio: ensemble.rank_energy as f64 / mode_count as f64,
        gram,
        ensemble,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<String> {
    Ok(to_json(&verify_report(args)?)?)
}
