use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{sample_modes, ModeIndex};
use crate::config::PhysicalConfig;
use crate::error::{Error, Result};
use crate::rankcheck::SpaceTimeGrid;

/// Pivot ratio `|R_ii| / max|R_jj|` below which the weighted design matrix
/// is declared rank deficient.
const RANK_TOLERANCE: f64 = 1e-10;

/// Coefficients of a sampled field on an enumerated mode set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub modes: Vec<ModeIndex>,
    pub coefficients: Vec<Complex64>,
    /// `‖x - Φc‖_w / ‖x‖_w` in the quadrature norm.
    pub residual: f64,
}

/// Weighted least-squares fit of `samples` (one value per grid point, grid
/// order) by the modes. The modes are independent but not orthonormal over
/// the region, so this solves the quadrature-weighted problem by QR rather
/// than taking inner products.
pub fn project_field(
    samples: &[Complex64],
    modes: &[ModeIndex],
    grid: &SpaceTimeGrid,
    cfg: &PhysicalConfig,
) -> Result<CoefficientVector> {
    if samples.len() != grid.len() {
        return Err(Error::SampleMismatch {
            samples: samples.len(),
            points: grid.len(),
        });
    }
    if modes.len() > grid.len() {
        return Err(Error::RankDeficient { ratio: 0.0 });
    }
    let sqrt_w: Vec<f64> = grid.weights().iter().map(|w| w.sqrt()).collect();
    let mut design = sample_modes(modes, grid, cfg);
    for (mut row, s) in design.row_iter_mut().zip(&sqrt_w) {
        row *= Complex64::new(*s, 0.0);
    }
    let rhs = DVector::from_iterator(samples.len(), samples.iter().zip(&sqrt_w).map(|(x, s)| x * s));

    let qr = design.clone().qr();
    let r = qr.r();
    let pivots: Vec<f64> = (0..modes.len()).map(|i| r[(i, i)].norm()).collect();
    let top = pivots.iter().cloned().fold(0.0, f64::max);
    let low = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    if modes.is_empty() || top == 0.0 || low / top < RANK_TOLERANCE {
        return Err(Error::RankDeficient {
            ratio: if top > 0.0 { low / top } else { 0.0 },
        });
    }
    let qh_b = qr.q().adjoint() * &rhs;
    let coeffs = r
        .solve_upper_triangular(&qh_b)
        .ok_or(Error::RankDeficient { ratio: low / top })?;

    let fit = &design * &coeffs;
    let resid = (&rhs - fit).norm();
    let total = rhs.norm();
    Ok(CoefficientVector {
        modes: modes.to_vec(),
        coefficients: coeffs.iter().copied().collect(),
        residual: if total > 0.0 { resid / total } else { 0.0 },
    })
}

/// Field values `Φc` on the grid.
pub fn reconstruct(coeffs: &CoefficientVector, grid: &SpaceTimeGrid, cfg: &PhysicalConfig) -> Vec<Complex64> {
    let design: DMatrix<Complex64> = sample_modes(&coeffs.modes, grid, cfg);
    let c = DVector::from_column_slice(&coeffs.coefficients);
    (design * c).iter().copied().collect()
}
