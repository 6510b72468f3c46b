use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numfmt::fmt_sig;

/// Relative asymmetry tolerated before a matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// How eigenvalue spectra are turned into a dimension count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankPolicy {
    /// Count eigenvalues at or above `epsilon · λ_max`.
    pub epsilon: f64,
    /// Smallest leading set holding `eta` of the trace.
    pub eta: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            eta: 0.99,
        }
    }
}

impl RankPolicy {
    pub fn new(epsilon: f64, eta: f64) -> Result<Self> {
        let p = Self { epsilon, eta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidPolicy(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidPolicy(format!(
                "eta must lie in (0, 1), got {}",
                self.eta
            )));
        }
        Ok(())
    }
}

/// Descending eigenvalues with both effective-rank readouts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
    pub rank_threshold: usize,
    pub rank_energy: usize,
    pub policy: RankPolicy,
}

impl SpectrumReport {
    /// Build from eigenvalues in any order.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, trace: f64, policy: RankPolicy) -> Result<Self> {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let mut report = Self {
            eigenvalues,
            trace,
            rank_threshold: 0,
            rank_energy: 0,
            policy,
        };
        let (t, e) = effective_rank(&report, policy)?;
        report.rank_threshold = t;
        report.rank_energy = e;
        Ok(report)
    }

    /// `index,eigenvalue,cumulative_fraction`, one row per eigenvalue,
    /// index starting at 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue,cumulative_fraction\n");
        let mut acc = 0.0;
        for (i, l) in self.eigenvalues.iter().enumerate() {
            acc += l;
            let frac = if self.trace != 0.0 { acc / self.trace } else { 0.0 };
            let _ = writeln!(out, "{},{},{}", i + 1, fmt_sig(*l), fmt_sig(frac));
        }
        out
    }
}

/// `(rank_threshold, rank_energy)`:
/// `#{λ >= ε·λ_max}` and the least `m` with `Σ_{top m} λ >= η·trace`.
pub fn effective_rank(spec: &SpectrumReport, policy: RankPolicy) -> Result<(usize, usize)> {
    policy.validate()?;
    let lambda = &spec.eigenvalues;
    if lambda.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let top = lambda.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let threshold = lambda.iter().filter(|&&l| l >= policy.epsilon * top).count();
    let target = policy.eta * spec.trace;
    let mut acc = 0.0;
    let mut energy = lambda.len();
    for (i, l) in lambda.iter().enumerate() {
        acc += l;
        if acc >= target {
            energy = i + 1;
            break;
        }
    }
    Ok((threshold, energy))
}

fn check_hermitian(m: &DMatrix<Complex64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut asym: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            asym = asym.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if asym > HERMITIAN_TOLERANCE * scale {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues descending, with
/// eigenvectors as matching columns.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    check_hermitian(m)?;
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Spectrum of a Hermitian matrix under the default [`RankPolicy`].
pub fn eigen_spectrum(m: &DMatrix<Complex64>) -> Result<SpectrumReport> {
    eigen_spectrum_with(m, RankPolicy::default())
}

pub fn eigen_spectrum_with(m: &DMatrix<Complex64>, policy: RankPolicy) -> Result<SpectrumReport> {
    policy.validate()?;
    let (values, _) = hermitian_eigen(m)?;
    let trace = (0..m.nrows()).map(|i| m[(i, i)].re).sum();
    SpectrumReport::from_eigenvalues(values, trace, policy)
}
