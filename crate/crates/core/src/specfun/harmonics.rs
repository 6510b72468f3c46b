//! Complex spherical harmonics, orthonormal on the unit sphere with the
//! Condon–Shortley phase.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::legendre::NormalizedLegendre;
use crate::error::{Error, Result};

/// Direction on the unit sphere: colatitude `theta ∈ [0, π]`, azimuth `phi ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    theta: f64,
    phi: f64,
}

impl Angle {
    /// Clamps `theta` into `[0, π]` and reduces `phi` modulo `2π`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let theta = theta.clamp(0.0, PI);
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    /// Direction of a nonzero Cartesian vector. The zero vector maps to the north pole.
    pub fn from_cartesian(v: [f64; 3]) -> Self {
        let rho = v[0].hypot(v[1]);
        let theta = rho.atan2(v[2]);
        let phi = if rho == 0.0 { 0.0 } else { v[1].atan2(v[0]) };
        Self::new(theta, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// `Y_n^m(θ, φ)`.
pub fn sph_harm(n: u32, m: i32, angle: Angle) -> Result<Complex64> {
    if m.unsigned_abs() > n {
        return Err(Error::OrderOutOfRange { n, m });
    }
    let table = NormalizedLegendre::new(n, angle.theta.cos());
    Ok(harmonic_from_table(&table, n, m, angle.phi))
}

fn harmonic_from_table(table: &NormalizedLegendre, n: u32, m: i32, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    let p = table.get(n, am);
    let (s, c) = (am as f64 * phi).sin_cos();
    let positive = Complex64::new(p * c, p * s);
    if m >= 0 {
        positive
    } else if am.is_multiple_of(2) {
        positive.conj()
    } else {
        -positive.conj()
    }
}

/// All `Y_n^m` for `n <= nmax` at one direction, stored at `n² + n + m`.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    nmax: u32,
    values: Vec<Complex64>,
}

impl HarmonicTable {
    pub fn new(nmax: u32, angle: Angle) -> Self {
        let legendre = NormalizedLegendre::new(nmax, angle.theta.cos());
        let len = ((nmax + 1) * (nmax + 1)) as usize;
        let mut values = vec![Complex64::new(0.0, 0.0); len];
        // e^{imφ} by repeated multiplication is accurate enough for the
        // degrees used here and avoids a sin/cos per order.
        let base = Complex64::from_polar(1.0, angle.phi);
        let mut rot = Complex64::new(1.0, 0.0);
        for m in 0..=nmax {
            if m > 0 {
                rot *= base;
                if m % 16 == 0 {
                    rot = Complex64::from_polar(1.0, m as f64 * angle.phi);
                }
            }
            for n in m..=nmax {
                let y = rot * legendre.get(n, m);
                let nn = (n * n + n) as usize;
                values[nn + m as usize] = y;
                if m > 0 {
                    let conj = y.conj();
                    values[nn - m as usize] = if m % 2 == 0 { conj } else { -conj };
                }
            }
        }
        Self { nmax, values }
    }

    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    #[inline]
    pub fn get(&self, n: u32, m: i32) -> Complex64 {
        debug_assert!(m.unsigned_abs() <= n && n <= self.nmax);
        self.values[((n * n + n) as i64 + m as i64) as usize]
    }
}
