//! Degrees of freedom of band-limited wave fields observed in a ball (or
//! disk) over a finite time window: closed-form and exact counts, the
//! underlying wave-mode basis, and numerical rank checks of those counts.

pub mod bounds;
pub mod config;
pub mod error;
pub mod modes;
pub mod numfmt;
pub mod quadrature;
pub mod rankcheck;
pub mod specfun;

pub use bounds::{bound_report, closed_form_bound, exact_mode_sum, BoundReport, Quantity};
pub use config::{Dimension, PhysicalConfig, SPEED_OF_LIGHT};
pub use error::{Error, Result};
pub use modes::{enumerate_modes, CoefficientVector, ModeIndex, PlaneWaveSet, WaveVector};
pub use rankcheck::{RankPolicy, Resolution, SpaceTimeGrid, SpectrumReport};
