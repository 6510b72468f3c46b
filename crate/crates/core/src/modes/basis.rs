use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::TAU;

use super::ModeIndex;
use crate::config::{Dimension, PhysicalConfig};
use crate::error::{Error, Result};
use crate::rankcheck::{Point, SpaceTimeGrid};
use crate::specfun::{bessel_j_upto, spherical_bessel_j_upto, Angle, HarmonicTable};

/// Slack on region and window membership tests, relative to R and T.
const MEMBERSHIP_SLACK: f64 = 1e-12;

fn norm(p: &Point) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

fn time_factor(freq: f64, t: f64, duration: f64) -> Complex64 {
    Complex64::from_polar(1.0 / duration.sqrt(), TAU * freq * t)
}

/// Value of one mode at `(position, t)`.
///
/// 3D: `j_n(k|r|) Y_n^m(r̂) e^{j2πft}/√T`; 2D: `J_m(k|r|) e^{jmθ} e^{j2πft}/√T`.
pub fn evaluate_mode(index: &ModeIndex, position: Point, t: f64, cfg: &PhysicalConfig) -> Result<Complex64> {
    let r = norm(&position);
    if r > cfg.radius * (1.0 + MEMBERSHIP_SLACK) {
        return Err(Error::OutsideRegion {
            distance: r,
            radius: cfg.radius,
        });
    }
    let slack = cfg.duration * MEMBERSHIP_SLACK;
    if !(t >= -slack && t <= cfg.duration + slack) {
        return Err(Error::OutsideWindow {
            t,
            duration: cfg.duration,
        });
    }
    let freq = index.bin.frequency(cfg);
    let k = cfg.wavenumber(freq);
    let space = match index.dim {
        Dimension::ThreeD => {
            let radial = spherical_bessel_j_upto(index.n as usize, k * r)[index.n as usize];
            if radial == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                let table = HarmonicTable::new(index.n, Angle::from_cartesian(position));
                table.get(index.n, index.m) * radial
            }
        }
        Dimension::TwoD => circular_factor(index.m, k * r, position[1].atan2(position[0])),
    };
    Ok(space * time_factor(freq, t, cfg.duration))
}

fn circular_factor(m: i32, kr: f64, theta: f64) -> Complex64 {
    let am = m.unsigned_abs() as usize;
    let mut radial = bessel_j_upto(am, kr)[am];
    if m < 0 && am % 2 == 1 {
        radial = -radial;
    }
    Complex64::from_polar(radial, m as f64 * theta)
}

/// Spatial factors of `modes` at each node: an `nodes × modes` matrix.
/// Consecutive modes sharing a bin reuse one Bessel sweep.
pub fn sample_space_factors(modes: &[ModeIndex], nodes: &[Point], cfg: &PhysicalConfig) -> DMatrix<Complex64> {
    let runs = bin_runs(modes);
    let nmax = super::max_degree(modes);
    let rows: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .map(|p| {
            let r = norm(p);
            let mut row = Vec::with_capacity(modes.len());
            let table = match modes.first().map(|m| m.dim) {
                Some(Dimension::ThreeD) => Some(HarmonicTable::new(nmax, Angle::from_cartesian(*p))),
                _ => None,
            };
            let theta = p[1].atan2(p[0]);
            for run in &runs {
                let group = &modes[run.clone()];
                let k = cfg.wavenumber(group[0].bin.frequency(cfg));
                let top = super::max_degree(group) as usize;
                match group[0].dim {
                    Dimension::ThreeD => {
                        let radial = spherical_bessel_j_upto(top, k * r);
                        let table = table.as_ref().expect("3D table");
                        for m in group {
                            row.push(table.get(m.n, m.m) * radial[m.n as usize]);
                        }
                    }
                    Dimension::TwoD => {
                        let radial = bessel_j_upto(top, k * r);
                        for m in group {
                            let am = m.m.unsigned_abs() as usize;
                            let sign = if m.m < 0 && am % 2 == 1 { -1.0 } else { 1.0 };
                            row.push(Complex64::from_polar(sign * radial[am], m.m as f64 * theta));
                        }
                    }
                }
            }
            row
        })
        .collect();
    DMatrix::from_fn(nodes.len(), modes.len(), |i, j| rows[i][j])
}

/// All mode values on the grid: a `grid.len() × modes` matrix in grid order.
pub fn sample_modes(modes: &[ModeIndex], grid: &SpaceTimeGrid, cfg: &PhysicalConfig) -> DMatrix<Complex64> {
    let space = sample_space_factors(modes, &grid.space_nodes, cfg);
    let time = sample_time_factors(modes, &grid.time_nodes, cfg);
    let nt = grid.time_nodes.len();
    DMatrix::from_fn(grid.len(), modes.len(), |i, j| space[(i / nt, j)] * time[(i % nt, j)])
}

/// `e^{j2πft}/√T` for each mode at each time node: `times × modes`.
pub(crate) fn sample_time_factors(modes: &[ModeIndex], times: &[f64], cfg: &PhysicalConfig) -> DMatrix<Complex64> {
    DMatrix::from_fn(times.len(), modes.len(), |i, j| {
        time_factor(modes[j].bin.frequency(cfg), times[i], cfg.duration)
    })
}

fn bin_runs(modes: &[ModeIndex]) -> Vec<std::ops::Range<usize>> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=modes.len() {
        if i == modes.len() || modes[i].bin != modes[start].bin {
            if i > start {
                runs.push(start..i);
            }
            start = i;
        }
    }
    runs
}
