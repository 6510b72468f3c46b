//! Closed-form degrees-of-freedom formulas and the exact discrete mode sums
//! they approximate.
//!
//! Notation used below: `a = eπR/c`, so that a wave at frequency `f` carries
//! spatial harmonics up to degree `⌈a·f⌉` inside the region.

use serde::{Deserialize, Serialize};
use std::f64::consts::E;

use crate::config::{ceil_tol, Dimension, PhysicalConfig};
use crate::error::{Error, Result};

/// Bins above which [`exact_mode_sum`] switches from a per-bin loop to
/// walking runs of equal truncation degree.
const DIRECT_BIN_LIMIT: i64 = 1 << 20;

/// Time-bandwidth count `⌈2WT⌉ + 1`.
pub fn dof_time_band(half_bandwidth: f64, duration: f64) -> u64 {
    ceil_tol(2.0 * half_bandwidth * duration) as u64 + 1
}

/// Single-frequency spatial count: `⌈eπFR/c⌉ + 1` in 2D, its square in 3D.
pub fn dof_space(dim: Dimension, freq: f64, radius: f64, wave_speed: f64) -> u64 {
    let n = ceil_tol(E * std::f64::consts::PI * freq * radius / wave_speed) as u64 + 1;
    match dim {
        Dimension::TwoD => n,
        Dimension::ThreeD => n * n,
    }
}

/// Degree `⌈e·k·R/2⌉` beyond which the spherical-wave expansion of a plane
/// wave is negligible inside radius `R`.
pub fn truncation_degree(radius: f64, wavenumber: f64) -> u64 {
    ceil_tol(E * wavenumber * radius / 2.0) as u64
}

/// Truncation degree of frequency bin `i` (frequency `i/T`).
pub fn bin_degree(cfg: &PhysicalConfig, bin: i64) -> u64 {
    let freq = bin as f64 / cfg.duration;
    truncation_degree(cfg.radius, cfg.wavenumber(freq))
}

/// Truncation degree at the carrier, used when the band holds no whole bin.
pub fn carrier_degree(cfg: &PhysicalConfig) -> u64 {
    truncation_degree(cfg.radius, cfg.wavenumber(cfg.center_freq))
}

/// Modes contributed by a frequency carrying harmonics up to degree `n`.
pub fn modes_per_frequency(dim: Dimension, degree: u64) -> u64 {
    match dim {
        Dimension::TwoD => degree + 1,
        Dimension::ThreeD => (degree + 1) * (degree + 1),
    }
}

/// Exact number of space-time-frequency modes: the sum over integer bins
/// `i ∈ [⌈(F_o-W)T⌉, ⌊(F_o+W)T⌋]` of `(N(i)+1)²` (3D) or `N(i)+1` (2D),
/// with `N(i)` the truncation degree at `f = i/T`.
///
/// If no integer bin lies in the band, the single carrier-frequency term
/// is returned so that the narrowband limit stays the spatial count.
pub fn exact_mode_sum(dim: Dimension, cfg: &PhysicalConfig) -> Result<u64> {
    cfg.validate()?;
    if cfg.duration <= 0.0 {
        return Err(Error::NonPositiveTime(cfg.duration));
    }
    let Some((lo, hi)) = cfg.bin_range() else {
        return Ok(modes_per_frequency(dim, carrier_degree(cfg)));
    };
    if cfg.radius == 0.0 {
        return Ok((hi - lo + 1) as u64);
    }

    let mut total: u64 = 0;
    let add = |total: &mut u64, count: u64, degree: u64| -> Result<()> {
        let term = modes_per_frequency(dim, degree)
            .checked_mul(count)
            .ok_or(Error::CountOverflow)?;
        *total = total.checked_add(term).ok_or(Error::CountOverflow)?;
        Ok(())
    };

    if hi - lo < DIRECT_BIN_LIMIT {
        for i in lo..=hi {
            add(&mut total, 1, bin_degree(cfg, i))?;
        }
        return Ok(total);
    }

    // Runs of equal degree: N(i) = n for i up to roughly n·T/a.
    let bins_per_degree = cfg.duration / cfg.spatial_scale();
    let mut i = lo;
    while i <= hi {
        let n = bin_degree(cfg, i);
        let mut end = ((n as f64 * bins_per_degree).floor() as i64).clamp(i, hi);
        while end < hi && bin_degree(cfg, end + 1) <= n {
            end += 1;
        }
        while end > i && bin_degree(cfg, end) > n {
            end -= 1;
        }
        add(&mut total, (end - i + 1) as u64, n)?;
        i = end + 1;
    }
    Ok(total)
}

/// Closed-form bound. 3D:
/// `TW[(2W²/3 + 2F_o²)a² + 6aF_o + 13/3] + ((F_o-W)a + 1)²`;
/// 2D: `4WT + 1 + 2aF_o + 2aTW²`.
pub fn closed_form_bound(dim: Dimension, cfg: &PhysicalConfig) -> f64 {
    let a = cfg.spatial_scale();
    let (w, t, f) = (cfg.half_bandwidth, cfg.duration, cfg.center_freq);
    match dim {
        Dimension::ThreeD => {
            let edge = (f - w) * a + 1.0;
            t * w * ((2.0 * w * w / 3.0 + 2.0 * f * f) * a * a + 6.0 * a * f + 13.0 / 3.0) + edge * edge
        }
        Dimension::TwoD => 4.0 * w * t + 1.0 + 2.0 * a * f + 2.0 * a * t * w * w,
    }
}

/// Large-constraint limit `2TW(W²/3 + F_o²)a²` of the 3D bound.
pub fn asymptotic_dof_3d(cfg: &PhysicalConfig) -> f64 {
    let a = cfg.spatial_scale();
    let (w, f) = (cfg.half_bandwidth, cfg.center_freq);
    2.0 * cfg.duration * w * (w * w / 3.0 + f * f) * a * a
}

/// Average number of 3D spatial modes per Hz across the band, `(F_o² + W²)a²`.
pub fn average_mode_density_3d(cfg: &PhysicalConfig) -> f64 {
    let a = cfg.spatial_scale();
    let (w, f) = (cfg.half_bandwidth, cfg.center_freq);
    (f * f + w * w) * a * a
}

/// Every bound evaluated for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub config: PhysicalConfig,
    pub d_2wt: u64,
    /// Spatial counts are taken at the carrier `F_o`.
    pub d_space2d: u64,
    pub d_space3d: u64,
    pub thm1: f64,
    pub thm2: f64,
    pub exact2d: u64,
    pub exact3d: u64,
    pub asym3d: f64,
    pub avg_density: f64,
    /// `N_0 = (F_o - W)·a`.
    pub n0: f64,
}

impl BoundReport {
    /// Field names in serialization order, excluding the config echo.
    pub const QUANTITIES: [&'static str; 10] = [
        "d_2wt",
        "d_space2d",
        "d_space3d",
        "thm1",
        "thm2",
        "exact2d",
        "exact3d",
        "asym3d",
        "avg_density",
        "n0",
    ];

    /// Look up a quantity by field name. Integer fields are returned as `f64`.
    pub fn quantity(&self, name: &str) -> Option<Quantity> {
        Some(match name {
            "d_2wt" => Quantity::Count(self.d_2wt),
            "d_space2d" => Quantity::Count(self.d_space2d),
            "d_space3d" => Quantity::Count(self.d_space3d),
            "thm1" => Quantity::Real(self.thm1),
            "thm2" => Quantity::Real(self.thm2),
            "exact2d" => Quantity::Count(self.exact2d),
            "exact3d" => Quantity::Count(self.exact3d),
            "asym3d" => Quantity::Real(self.asym3d),
            "avg_density" => Quantity::Real(self.avg_density),
            "n0" => Quantity::Real(self.n0),
            _ => return None,
        })
    }
}

/// A report value, keeping exact counts distinct from real-valued bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Count(u64),
    Real(f64),
}

impl Quantity {
    pub fn as_f64(self) -> f64 {
        match self {
            Quantity::Count(n) => n as f64,
            Quantity::Real(x) => x,
        }
    }
}

/// Populate a [`BoundReport`]. With `T = 0` the exact sums fall back to the
/// narrowband spatial count at `F_o`.
pub fn bound_report(cfg: &PhysicalConfig) -> Result<BoundReport> {
    cfg.validate()?;
    let c = cfg.wave_speed;
    let exact = |dim| {
        if cfg.duration > 0.0 {
            exact_mode_sum(dim, cfg)
        } else {
            Ok(dof_space(dim, cfg.center_freq, cfg.radius, c))
        }
    };
    Ok(BoundReport {
        config: *cfg,
        d_2wt: dof_time_band(cfg.half_bandwidth, cfg.duration),
        d_space2d: dof_space(Dimension::TwoD, cfg.center_freq, cfg.radius, c),
        d_space3d: dof_space(Dimension::ThreeD, cfg.center_freq, cfg.radius, c),
        thm1: closed_form_bound(Dimension::TwoD, cfg),
        thm2: closed_form_bound(Dimension::ThreeD, cfg),
        exact2d: exact(Dimension::TwoD)?,
        exact3d: exact(Dimension::ThreeD)?,
        asym3d: asymptotic_dof_3d(cfg),
        avg_density: average_mode_density_3d(cfg),
        n0: cfg.lower_edge() * cfg.spatial_scale(),
    })
}
