use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::config::{Dimension, PhysicalConfig};
use crate::error::{Error, Result};
use crate::quadrature::GaussRule;

/// Spatial point in meters. Two-dimensional regions use `z = 0`.
pub type Point = [f64; 3];

/// Node counts per axis.
///
/// In 3D, `angular` is the azimuth count and the polar (cos θ) Gauss rule
/// uses `angular / 2 + 1` nodes, so `angular >= 2N + 1` integrates products
/// of degree-`N` harmonics exactly. In 2D, `angular` is the azimuth count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub radial: usize,
    pub angular: usize,
    pub time: usize,
}

impl Resolution {
    pub fn new(radial: usize, angular: usize, time: usize) -> Self {
        Self { radial, angular, time }
    }

    /// Same counts, each doubled.
    pub fn doubled(&self) -> Self {
        Self::new(2 * self.radial, 2 * self.angular, 2 * self.time)
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "radial={}, angular={}, time={}",
            self.radial, self.angular, self.time
        )
    }
}

/// One space-time sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub position: Point,
    pub t: f64,
}

/// Tensor-product quadrature over region × `[0, T]`.
///
/// Points are ordered space-major: flat index `s * n_time + τ`. Weights carry
/// units of m³·s (3D) or m²·s (2D) and sum to `volume × T`.
#[derive(Debug, Clone)]
pub struct SpaceTimeGrid {
    pub dim: Dimension,
    pub resolution: Resolution,
    pub space_nodes: Vec<Point>,
    pub space_weights: Vec<f64>,
    pub time_nodes: Vec<f64>,
    pub time_weights: Vec<f64>,
}

impl SpaceTimeGrid {
    pub fn len(&self) -> usize {
        self.space_nodes.len() * self.time_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, idx: usize) -> GridPoint {
        let nt = self.time_nodes.len();
        GridPoint {
            position: self.space_nodes[idx / nt],
            t: self.time_nodes[idx % nt],
        }
    }

    pub fn weight(&self, idx: usize) -> f64 {
        let nt = self.time_nodes.len();
        self.space_weights[idx / nt] * self.time_weights[idx % nt]
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }

    /// `∫ f dV dt` approximated on the grid.
    pub fn integrate<F: FnMut(GridPoint) -> f64>(&self, mut f: F) -> f64 {
        (0..self.len()).map(|i| self.weight(i) * f(self.point(i))).sum()
    }
}

/// Region measure: `4πR³/3` or `πR²`.
pub fn region_volume(dim: Dimension, radius: f64) -> f64 {
    match dim {
        Dimension::ThreeD => 4.0 * PI * radius.powi(3) / 3.0,
        Dimension::TwoD => PI * radius * radius,
    }
}

/// Spatial nodes and weights over the ball (3D) or disk (2D) of radius `radius`.
pub fn spatial_rule(dim: Dimension, radius: f64, radial: usize, angular: usize) -> (Vec<Point>, Vec<f64>) {
    let beta = match dim {
        Dimension::ThreeD => 2,
        Dimension::TwoD => 1,
    };
    let (rs, rw) = GaussRule::jacobi_beta(radial, beta).mapped(0.0, radius, beta);
    let azimuths: Vec<f64> = (0..angular).map(|j| TAU * j as f64 / angular as f64).collect();
    let az_weight = TAU / angular as f64;

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    match dim {
        Dimension::TwoD => {
            for (r, wr) in rs.iter().zip(&rw) {
                for phi in &azimuths {
                    let (s, c) = phi.sin_cos();
                    nodes.push([r * c, r * s, 0.0]);
                    weights.push(wr * az_weight);
                }
            }
        }
        Dimension::ThreeD => {
            let polar = GaussRule::legendre(angular / 2 + 1);
            for (r, wr) in rs.iter().zip(&rw) {
                for (u, wu) in polar.nodes.iter().zip(&polar.weights) {
                    let st = ((1.0 - u) * (1.0 + u)).max(0.0).sqrt();
                    for phi in &azimuths {
                        let (s, c) = phi.sin_cos();
                        nodes.push([r * st * c, r * st * s, r * u]);
                        weights.push(wr * wu * az_weight);
                    }
                }
            }
        }
    }
    (nodes, weights)
}

/// Gauss rule in radius (with the `r` or `r²` Jacobian), Gauss–Legendre in
/// `cos θ` and uniform azimuth, Gauss–Legendre in time.
pub fn build_grid(dim: Dimension, cfg: &PhysicalConfig, resolution: Resolution) -> Result<SpaceTimeGrid> {
    cfg.validate()?;
    if resolution.radial == 0 || resolution.angular == 0 || resolution.time == 0 {
        return Err(Error::InvalidConfig(format!(
            "every resolution count must be >= 1 (got {resolution})"
        )));
    }
    if cfg.radius <= 0.0 || cfg.duration <= 0.0 {
        return Err(Error::ZeroMeasure {
            radius: cfg.radius,
            duration: cfg.duration,
        });
    }
    let (space_nodes, space_weights) = spatial_rule(dim, cfg.radius, resolution.radial, resolution.angular);
    let (time_nodes, time_weights) = GaussRule::legendre(resolution.time).mapped(0.0, cfg.duration, 0);
    Ok(SpaceTimeGrid {
        dim,
        resolution,
        space_nodes,
        space_weights,
        time_nodes,
        time_weights,
    })
}
