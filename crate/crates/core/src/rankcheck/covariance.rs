use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::TAU;

use super::grid::SpaceTimeGrid;
use super::spectrum::{RankPolicy, SpectrumReport};
use crate::error::Result;
use crate::modes::PlaneWaveSet;

/// Values of `field` at every grid point, in grid order.
///
/// Each plane wave factors into a spatial and a temporal phase, so the
/// samples are a `space × waves` by `waves × time` product.
pub fn sample_field(field: &PlaneWaveSet, grid: &SpaceTimeGrid) -> Vec<Complex64> {
    let nw = field.waves.len();
    let space = DMatrix::from_fn(grid.space_nodes.len(), nw, |s, w| {
        let wave = &field.waves[w];
        let p = grid.space_nodes[s];
        let kr = wave.wave.k * (wave.wave.k_hat[0] * p[0] + wave.wave.k_hat[1] * p[1] + wave.wave.k_hat[2] * p[2]);
        wave.amplitude * Complex64::from_polar(1.0, kr)
    });
    let time = DMatrix::from_fn(nw, grid.time_nodes.len(), |w, t| {
        Complex64::from_polar(1.0, TAU * field.waves[w].wave.f * grid.time_nodes[t])
    });
    let values = space * time;
    // Column-major storage; grid order is space-major.
    values.transpose().iter().copied().collect()
}

/// `K` fields sampled and scaled by `√w`: a `points × K` matrix.
fn weighted_samples(fields: &[PlaneWaveSet], grid: &SpaceTimeGrid) -> DMatrix<Complex64> {
    let sqrt_w: Vec<f64> = grid.weights().iter().map(|w| w.sqrt()).collect();
    let columns: Vec<Vec<Complex64>> = fields.par_iter().map(|f| sample_field(f, grid)).collect();
    DMatrix::from_fn(grid.len(), fields.len(), |s, k| columns[k][s] * sqrt_w[s])
}

/// `C = (1/K) Σ_k (√w ∘ x_k)(√w ∘ x_k)ᴴ`, one row and column per grid point.
/// Exactly Hermitian.
pub fn ensemble_covariance(fields: &[PlaneWaveSet], grid: &SpaceTimeGrid) -> DMatrix<Complex64> {
    let n = grid.len();
    if fields.is_empty() {
        return DMatrix::zeros(n, n);
    }
    let x = weighted_samples(fields, grid);
    let scale = 1.0 / fields.len() as f64;
    let mut c = (&x * x.adjoint()) * Complex64::new(scale, 0.0);
    for p in 0..n {
        c[(p, p)].im = 0.0;
        for q in p + 1..n {
            c[(q, p)] = c[(p, q)].conj();
        }
    }
    c
}

/// Spectrum of [`ensemble_covariance`] without forming it: the nonzero
/// eigenvalues of `(1/K) X Xᴴ` are those of the `K × K` matrix `(1/K) Xᴴ X`.
/// The reported spectrum has `min(K, points)` entries.
pub fn ensemble_spectrum(fields: &[PlaneWaveSet], grid: &SpaceTimeGrid, policy: RankPolicy) -> Result<SpectrumReport> {
    policy.validate()?;
    let x = weighted_samples(fields, grid);
    let k = fields.len().max(1);
    let mut dual = x.ad_mul(&x) * Complex64::new(1.0 / k as f64, 0.0);
    let n = dual.nrows();
    for p in 0..n {
        dual[(p, p)].im = 0.0;
        for q in p + 1..n {
            dual[(q, p)] = dual[(p, q)].conj();
        }
    }
    let mut report = super::eigen_spectrum_with(&dual, policy)?;
    report.eigenvalues.truncate(grid.len().min(n));
    Ok(report)
}
