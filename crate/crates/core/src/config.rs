//! The constraint tuple shared by every bound, basis and experiment.

use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Wave speed used when none is given, in m/s.
pub const SPEED_OF_LIGHT: f64 = 3e8;

/// Spatial dimension of the observation region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    TwoD,
    ThreeD,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::TwoD => f.write_str("2d"),
            Dimension::ThreeD => f.write_str("3d"),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "2" | "2d" => Ok(Dimension::TwoD),
            "3" | "3d" => Ok(Dimension::ThreeD),
            other => Err(Error::InvalidConfig(format!("unknown dimension '{other}'"))),
        }
    }
}

/// Ball (or disk) of radius `radius`, band `center_freq ± half_bandwidth`,
/// observation window `[0, duration]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    /// R, meters.
    pub radius: f64,
    /// W, Hz. The occupied band is 2W wide.
    pub half_bandwidth: f64,
    /// T, seconds.
    pub duration: f64,
    /// F_o, Hz.
    pub center_freq: f64,
    /// c, m/s.
    pub wave_speed: f64,
}

impl PhysicalConfig {
    /// Validated constructor with `c = 3e8`.
    pub fn new(radius: f64, half_bandwidth: f64, duration: f64, center_freq: f64) -> Result<Self> {
        Self::with_wave_speed(radius, half_bandwidth, duration, center_freq, SPEED_OF_LIGHT)
    }

    pub fn with_wave_speed(
        radius: f64,
        half_bandwidth: f64,
        duration: f64,
        center_freq: f64,
        wave_speed: f64,
    ) -> Result<Self> {
        let cfg = Self {
            radius,
            half_bandwidth,
            duration,
            center_freq,
            wave_speed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("R", self.radius),
            ("W", self.half_bandwidth),
            ("T", self.duration),
            ("F0", self.center_freq),
            ("c", self.wave_speed),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite")));
            }
            if v < 0.0 {
                return Err(Error::InvalidConfig(format!("{name} must be >= 0 (got {v})")));
            }
        }
        if self.wave_speed <= 0.0 {
            return Err(Error::InvalidConfig("c must be > 0".into()));
        }
        if self.center_freq < self.half_bandwidth {
            return Err(Error::BandEdgeBelowZero(self.center_freq - self.half_bandwidth));
        }
        Ok(())
    }

    /// `eπR/c`: spatial modes gained per Hz of frequency.
    pub fn spatial_scale(&self) -> f64 {
        E * PI * self.radius / self.wave_speed
    }

    pub fn lower_edge(&self) -> f64 {
        self.center_freq - self.half_bandwidth
    }

    pub fn upper_edge(&self) -> f64 {
        self.center_freq + self.half_bandwidth
    }

    /// Scalar wave-number `2πf/c`.
    pub fn wavenumber(&self, freq: f64) -> f64 {
        2.0 * PI * freq / self.wave_speed
    }

    /// Inclusive range of integer bins `i` with `i/T` inside the band, or
    /// `None` when no such integer exists. Requires `T > 0`.
    pub fn bin_range(&self) -> Option<(i64, i64)> {
        let lo = ceil_tol(self.lower_edge() * self.duration) as i64;
        let hi = floor_tol(self.upper_edge() * self.duration) as i64;
        (lo <= hi).then_some((lo, hi))
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn with_half_bandwidth(mut self, w: f64) -> Self {
        self.half_bandwidth = w;
        self
    }

    pub fn with_duration(mut self, t: f64) -> Self {
        self.duration = t;
        self
    }

    pub fn with_center_freq(mut self, f: f64) -> Self {
        self.center_freq = f;
        self
    }
}

/// Relative slack under which a value is treated as sitting on an integer.
///
/// Products such as `eπR/c · i/T` land a few ulps off an integer when the
/// configuration is built to make them integral; the ceiling must not jump.
pub const INTEGER_SNAP: f64 = 1e-9;

/// `⌈x⌉`, snapping values within [`INTEGER_SNAP`] of an integer onto it.
pub fn ceil_tol(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= INTEGER_SNAP * r.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

/// `⌊x⌋` with the same snapping as [`ceil_tol`].
pub fn floor_tol(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= INTEGER_SNAP * r.abs().max(1.0) {
        r
    } else {
        x.floor()
    }
}
