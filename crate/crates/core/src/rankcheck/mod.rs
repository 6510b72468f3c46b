//! Numerical checks of the counts: quadrature grids over region × window,
//! Gram and ensemble-covariance matrices, Hermitian spectra with two
//! effective-rank readouts, and plane-wave truncation error.

mod covariance;
mod gram;
mod grid;
mod spectrum;
mod truncation;

pub use covariance::{ensemble_covariance, ensemble_spectrum, sample_field};
pub use gram::{gram_of_modes, recommended_resolution, required_resolution};
pub use grid::{build_grid, region_volume, spatial_rule, GridPoint, Point, Resolution, SpaceTimeGrid};
pub use spectrum::{
    effective_rank, eigen_spectrum, eigen_spectrum_with, hermitian_eigen, RankPolicy, SpectrumReport,
    HERMITIAN_TOLERANCE,
};
pub use truncation::{truncation_error, truncation_resolution};
