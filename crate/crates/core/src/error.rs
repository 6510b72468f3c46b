use thiserror::Error;

use crate::rankcheck::Resolution;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("band edge below zero: F0 - W = {0}")]
    BandEdgeBelowZero(f64),

    #[error("order |m| = {m} exceeds degree n = {n}")]
    OrderOutOfRange { n: u32, m: i32 },

    #[error("observation time must be positive for a binned mode sum (got T = {0})")]
    NonPositiveTime(f64),

    #[error("mode count {count} exceeds cap {cap}")]
    ModeCapExceeded { count: u64, cap: u64 },

    #[error("mode count overflowed 64-bit range")]
    CountOverflow,

    #[error("position at distance {distance} lies outside the region of radius {radius}")]
    OutsideRegion { distance: f64, radius: f64 },

    #[error("time {t} lies outside the observation window [0, {duration}]")]
    OutsideWindow { t: f64, duration: f64 },

    #[error("region has zero measure (R = {radius}, T = {duration})")]
    ZeroMeasure { radius: f64, duration: f64 },

    #[error("grid under-resolved: need at least {required}, got {actual}")]
    UnderResolved { required: Resolution, actual: Resolution },

    #[error("sample count {samples} does not match grid size {points}")]
    SampleMismatch { samples: usize, points: usize },

    #[error("normal system is rank deficient (pivot ratio {ratio:e})")]
    RankDeficient { ratio: f64 },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix must be square (got {rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("invalid rank policy: {0}")]
    InvalidPolicy(String),
}
