//! Physical configuration from flags and an optional `key = value` file.
//! Precedence: flags, then file, then defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use wavedof_core::{Error, PhysicalConfig, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Region radius R, meters [default: 0].
    #[arg(long = "R", allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Half bandwidth W, Hz [default: 0].
    #[arg(long = "W", allow_negative_numbers = true)]
    pub half_bandwidth: Option<f64>,
    /// Observation time T, seconds [default: 0].
    #[arg(long = "T", allow_negative_numbers = true)]
    pub duration: Option<f64>,
    /// Center frequency F_o, Hz (required, by flag or file).
    #[arg(long = "F0", allow_negative_numbers = true)]
    pub center_freq: Option<f64>,
    /// Wave speed c, m/s [default: 3e8].
    #[arg(long = "c", allow_negative_numbers = true)]
    pub wave_speed: Option<f64>,
    /// Plain-text config file with `key = value` lines (keys R, W, T, F0, c).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<PhysicalConfig> {
        let file = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let pick = |flag: Option<f64>, key: &str| flag.or_else(|| file.get(key).copied());
        let center_freq = pick(self.center_freq, "F0")
            .ok_or_else(|| Error::InvalidConfig("F0 is required (--F0 or config file)".into()))?;
        let cfg = PhysicalConfig::with_wave_speed(
            pick(self.radius, "R").unwrap_or(0.0),
            pick(self.half_bandwidth, "W").unwrap_or(0.0),
            pick(self.duration, "T").unwrap_or(0.0),
            center_freq,
            pick(self.wave_speed, "c").unwrap_or(SPEED_OF_LIGHT),
        )?;
        Ok(cfg)
    }
}

/// Canonical key for a config-file entry.
fn canonical_key(key: &str) -> Option<&'static str> {
    Some(match key {
        "R" | "radius" => "R",
        "W" | "half_bandwidth" => "W",
        "T" | "duration" => "T",
        "F0" | "F_o" | "Fo" | "center_freq" => "F0",
        "c" | "wave_speed" => "c",
        _ => return None,
    })
}

pub fn parse_config_text(text: &str) -> wavedof_core::Result<BTreeMap<&'static str, f64>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::InvalidConfig(format!("config line {}: {msg}: '{raw}'", lineno + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
        let key = canonical_key(key.trim()).ok_or_else(|| bad("unknown key"))?;
        let value: f64 = value.trim().parse().map_err(|_| bad("not a number"))?;
        out.insert(key, value);
    }
    Ok(out)
}

fn read_config_file(path: &Path) -> Result<BTreeMap<&'static str, f64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config file {}", path.display()))?;
    Ok(parse_config_text(&text)?)
}
