//! The space-time-frequency basis: enumeration, pointwise evaluation, plane
//! waves and their spherical-wave expansion, random band-limited fields and
//! least-squares projection onto the enumerated modes.
//!
//! A mode is a frequency bin `i` (frequency `i/T`) together with a spatial
//! harmonic: `(n, m)` with `|m| <= n <= N(i)` in 3D, or a circular order `m`
//! in 2D. Time dependence is `exp(+j2π i t/T)/√T` throughout.

mod basis;
mod field;
mod projection;

pub(crate) use basis::sample_time_factors;
pub use basis::{evaluate_mode, sample_modes, sample_space_factors};
pub use field::{
    jacobi_anger_partial, plane_wave, synthesize_ensemble, synthesize_field, PlaneWave, PlaneWaveSet, WaveVector,
    PRNG_ALGORITHM,
};
pub use projection::{project_field, reconstruct, CoefficientVector};

use serde::{Deserialize, Serialize};

use crate::bounds::{bin_degree, carrier_degree, exact_mode_sum};
use crate::config::{Dimension, PhysicalConfig};
use crate::error::{Error, Result};

/// Default ceiling on enumerated mode counts.
pub const DEFAULT_MODE_CAP: u64 = 10_000_000;

/// Which frequency a mode sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bin {
    /// Integer bin `i`, frequency `i/T`.
    Harmonic(i64),
    /// The carrier `F_o`, used only when the band contains no whole bin.
    Carrier,
}

impl Bin {
    pub fn frequency(&self, cfg: &PhysicalConfig) -> f64 {
        match *self {
            Bin::Harmonic(i) => i as f64 / cfg.duration,
            Bin::Carrier => cfg.center_freq,
        }
    }

    pub fn index(&self) -> Option<i64> {
        match *self {
            Bin::Harmonic(i) => Some(i),
            Bin::Carrier => None,
        }
    }
}

/// Identity of one basis function. Ordered lexicographically by `(bin, n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub bin: Bin,
    /// Spherical degree; always 0 in 2D.
    pub n: u32,
    pub m: i32,
    pub dim: Dimension,
}

/// Circular orders used for 2D modes at truncation degree `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CircularOrders {
    /// `m = 0..=N`: `N + 1` orders, matching the 2D spatial count.
    #[default]
    NonNegative,
    /// `m = -N..=N`: the full `2N + 1` circular-harmonic set.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerateOptions {
    pub circular: CircularOrders,
    pub cap: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            circular: CircularOrders::NonNegative,
            cap: DEFAULT_MODE_CAP,
        }
    }
}

/// `(f, k)` of bin `i`: `f = i/T`, `k = 2πi/(cT)`.
pub fn mode_wavenumber(i: i64, cfg: &PhysicalConfig) -> (f64, f64) {
    let f = i as f64 / cfg.duration;
    (f, cfg.wavenumber(f))
}

/// All modes of the configuration, with the default options.
pub fn enumerate_modes(dim: Dimension, cfg: &PhysicalConfig) -> Result<Vec<ModeIndex>> {
    enumerate_modes_with(dim, cfg, EnumerateOptions::default())
}

pub fn enumerate_modes_with(dim: Dimension, cfg: &PhysicalConfig, opts: EnumerateOptions) -> Result<Vec<ModeIndex>> {
    cfg.validate()?;
    if cfg.duration <= 0.0 {
        return Err(Error::NonPositiveTime(cfg.duration));
    }
    let count = match (dim, opts.circular) {
        (Dimension::TwoD, CircularOrders::Symmetric) => symmetric_count(cfg)?,
        _ => exact_mode_sum(dim, cfg)?,
    };
    if count > opts.cap {
        return Err(Error::ModeCapExceeded { count, cap: opts.cap });
    }

    let bins: Vec<(Bin, u64)> = match cfg.bin_range() {
        Some((lo, hi)) => (lo..=hi).map(|i| (Bin::Harmonic(i), bin_degree(cfg, i))).collect(),
        None => vec![(Bin::Carrier, carrier_degree(cfg))],
    };
    let mut modes = Vec::with_capacity(count as usize);
    for (bin, degree) in bins {
        let degree = degree as i32;
        match dim {
            Dimension::ThreeD => {
                for n in 0..=degree {
                    for m in -n..=n {
                        modes.push(ModeIndex {
                            bin,
                            n: n as u32,
                            m,
                            dim,
                        });
                    }
                }
            }
            Dimension::TwoD => {
                let first = match opts.circular {
                    CircularOrders::NonNegative => 0,
                    CircularOrders::Symmetric => -degree,
                };
                for m in first..=degree {
                    modes.push(ModeIndex { bin, n: 0, m, dim });
                }
            }
        }
    }
    Ok(modes)
}

fn symmetric_count(cfg: &PhysicalConfig) -> Result<u64> {
    let per = |d: u64| 2 * d + 1;
    match cfg.bin_range() {
        None => Ok(per(carrier_degree(cfg))),
        Some((lo, hi)) => (lo..=hi).try_fold(0u64, |acc, i| {
            acc.checked_add(per(bin_degree(cfg, i))).ok_or(Error::CountOverflow)
        }),
    }
}

/// Largest spatial order appearing in `modes`: `max n` in 3D, `max |m|` in 2D.
pub fn max_degree(modes: &[ModeIndex]) -> u32 {
    modes
        .iter()
        .map(|m| match m.dim {
            Dimension::ThreeD => m.n,
            Dimension::TwoD => m.m.unsigned_abs(),
        })
        .max()
        .unwrap_or(0)
}
