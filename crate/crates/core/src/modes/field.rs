use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::config::{Dimension, PhysicalConfig};
use crate::rankcheck::Point;
use crate::specfun::{spherical_bessel_j_upto, Angle, HarmonicTable};

/// Identifier of the generator behind [`synthesize_field`], recorded in run metadata.
pub const PRNG_ALGORITHM: &str = "ChaCha20Rng/rand_chacha-0.9/seed_from_u64";

/// Propagation direction, frequency and wave-number of a plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveVector {
    pub k_hat: [f64; 3],
    pub f: f64,
    pub k: f64,
}

impl WaveVector {
    /// Normalizes `direction`; `k = 2πf/c`.
    pub fn new(direction: [f64; 3], f: f64, wave_speed: f64) -> Self {
        let n = (direction[0].powi(2) + direction[1].powi(2) + direction[2].powi(2)).sqrt();
        assert!(n > 0.0, "WaveVector direction must be nonzero");
        Self {
            k_hat: [direction[0] / n, direction[1] / n, direction[2] / n],
            f,
            k: TAU * f / wave_speed,
        }
    }

    fn dot(&self, p: &Point) -> f64 {
        self.k * (self.k_hat[0] * p[0] + self.k_hat[1] * p[1] + self.k_hat[2] * p[2])
    }
}

/// `exp(j(k·r + ckt))`, with `ck = 2πf`.
pub fn plane_wave(wv: &WaveVector, position: Point, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, wv.dot(&position) + TAU * wv.f * t)
}

/// Degree-`N` partial sum of the spherical-wave expansion of `exp(jk·r)`:
/// `4π Σ_{n<=N} jⁿ j_n(k|r|) Σ_m Y_n^m(r̂) conj(Y_n^m(k̂))`.
pub fn jacobi_anger_partial(wv: &WaveVector, position: Point, degree: u32) -> Complex64 {
    let r = (position[0].powi(2) + position[1].powi(2) + position[2].powi(2)).sqrt();
    let radial = spherical_bessel_j_upto(degree as usize, wv.k * r);
    let yr = HarmonicTable::new(degree, Angle::from_cartesian(position));
    let yk = HarmonicTable::new(degree, Angle::from_cartesian(wv.k_hat));
    let mut sum = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    for n in 0..=degree {
        if radial[n as usize] != 0.0 {
            let ni = n as i32;
            let angular: Complex64 = (-ni..=ni).map(|m| yr.get(n, m) * yk.get(n, m).conj()).sum();
            sum += phase * angular * radial[n as usize];
        }
        phase *= Complex64::i();
    }
    sum * (4.0 * PI)
}

/// One weighted plane wave of a synthesized field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    pub amplitude: Complex64,
    pub wave: WaveVector,
}

/// Superposition of plane waves, reproducible from its seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveSet {
    pub waves: Vec<PlaneWave>,
    pub seed: u64,
}

impl PlaneWaveSet {
    pub fn evaluate(&self, position: Point, t: f64) -> Complex64 {
        self.waves
            .iter()
            .map(|w| w.amplitude * plane_wave(&w.wave, position, t))
            .sum()
    }
}

/// Random band-limited field: directions uniform on the sphere (circle in
/// 2D) via normalized Gaussian vectors, frequencies uniform on
/// `[F_o - W, F_o + W]`, amplitudes unit-variance circular complex Gaussian.
pub fn synthesize_field(dim: Dimension, cfg: &PhysicalConfig, num_waves: usize, seed: u64) -> PlaneWaveSet {
    assert!(num_waves >= 1, "a field needs at least one wave");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let waves = (0..num_waves)
        .map(|_| {
            let direction = random_direction(dim, &mut rng);
            let f = if cfg.half_bandwidth == 0.0 {
                cfg.center_freq
            } else {
                rng.random_range(cfg.lower_edge()..=cfg.upper_edge())
            };
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            PlaneWave {
                amplitude: Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2,
                wave: WaveVector::new(direction, f, cfg.wave_speed),
            }
        })
        .collect();
    PlaneWaveSet { waves, seed }
}

/// `count` independent fields. Per-field seeds are drawn from one ChaCha
/// stream seeded with `seed`, so ensembles with different seeds do not
/// share members.
pub fn synthesize_ensemble(
    dim: Dimension,
    cfg: &PhysicalConfig,
    num_waves: usize,
    count: usize,
    seed: u64,
) -> Vec<PlaneWaveSet> {
    let mut master = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| synthesize_field(dim, cfg, num_waves, master.next_u64()))
        .collect()
}

fn random_direction<R: Rng>(dim: Dimension, rng: &mut R) -> [f64; 3] {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = match dim {
            Dimension::ThreeD => rng.sample(StandardNormal),
            Dimension::TwoD => 0.0,
        };
        let n = (x * x + y * y + z * z).sqrt();
        // Measure-zero event; redraw rather than divide by zero.
        if n > 0.0 {
            return [x / n, y / n, z / n];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::truncation_degree;

    fn cfg() -> PhysicalConfig {
        PhysicalConfig::with_wave_speed(1.0, 0.5, 1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn ensemble_is_reproducible_and_distinct() {
        let a = synthesize_ensemble(Dimension::ThreeD, &cfg(), 4, 3, 9);
        assert_eq!(a, synthesize_ensemble(Dimension::ThreeD, &cfg(), 4, 3, 9));
        assert_ne!(a[0], a[1]);
        assert_ne!(a[0], synthesize_ensemble(Dimension::ThreeD, &cfg(), 4, 3, 10)[0]);
    }

    #[test]
    fn zero_wavenumber_is_constant() {
        let wv = WaveVector::new([0.0, 0.0, 1.0], 0.0, 1.0);
        assert_eq!(plane_wave(&wv, [0.3, -0.2, 0.9], 0.4), Complex64::new(1.0, 0.0));
        let s = jacobi_anger_partial(&wv, [0.3, -0.2, 0.9], 0);
        assert!((s - 1.0).norm() < 1e-14);
    }

    #[test]
    fn half_turn_phase() {
        let wv = WaveVector::new([1.0, 0.0, 0.0], 1.0, 1.0);
        // k = 2π, so k·r = π at x = 1/2.
        let v = plane_wave(&wv, [0.5, 0.0, 0.0], 0.0);
        assert!((v + 1.0).norm() < 1e-15);
    }

    #[test]
    fn partial_sum_converges_to_plane_wave() {
        let wv = WaveVector::new([0.3, -0.5, 0.8], 5.0 / TAU, 1.0); // k = 5
        let p = [0.2, 0.6, -0.7];
        let exact = plane_wave(&wv, p, 0.0);
        let n = truncation_degree(1.0, wv.k) as u32;
        assert_eq!(n, 7);
        let e7 = (jacobi_anger_partial(&wv, p, n) - exact).norm();
        let e30 = (jacobi_anger_partial(&wv, p, 30) - exact).norm();
        assert!(e7 < 0.1, "{e7}");
        assert!(e30 < 1e-13, "{e30}");
    }

    #[test]
    fn synthesis_is_deterministic() {
        let a = synthesize_field(Dimension::ThreeD, &cfg(), 17, 42);
        let b = synthesize_field(Dimension::ThreeD, &cfg(), 17, 42);
        assert_eq!(a, b);
        let c = synthesize_field(Dimension::ThreeD, &cfg(), 17, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn narrowband_frequencies_pinned() {
        let set = synthesize_field(Dimension::TwoD, &cfg().with_half_bandwidth(0.0), 50, 1);
        assert!(set.waves.iter().all(|w| w.wave.f == 2.0 && w.wave.k_hat[2] == 0.0));
        let set = synthesize_field(Dimension::ThreeD, &cfg(), 500, 1);
        assert!(set.waves.iter().all(|w| (1.5..=2.5).contains(&w.wave.f)));
        assert!(set
            .waves
            .iter()
            .all(|w| (w.wave.k_hat.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn directions_are_isotropic() {
        let set = synthesize_field(Dimension::ThreeD, &cfg(), 100_000, 7);
        let mut mean = [0.0; 3];
        for w in &set.waves {
            for (m, k) in mean.iter_mut().zip(w.wave.k_hat) {
                *m += k / 1e5;
            }
        }
        let norm = mean.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(norm <= 0.02, "mean direction norm {norm}");
    }
}
