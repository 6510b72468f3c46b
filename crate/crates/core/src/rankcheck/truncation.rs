use rayon::prelude::*;

use super::grid::{spatial_rule, Resolution};
use crate::config::Dimension;
use crate::modes::{jacobi_anger_partial, plane_wave, WaveVector};

/// Radial and angular counts that resolve both the plane wave and the
/// degree-`degree` expansion over a ball of radius `radius`.
pub fn truncation_resolution(wv: &WaveVector, radius: f64, degree: u32) -> Resolution {
    let kr = wv.k * radius;
    let radial = (kr / 2.0).ceil() as usize + 20;
    let angular = 2 * (degree as usize).max(kr.ceil() as usize + 20) + 1;
    Resolution::new(radial, angular, 1)
}

/// `‖e^{jk·r} − S_N(r)‖ / ‖e^{jk·r}‖` in `L²` over the ball, where `S_N` is
/// the degree-`degree` spherical-wave partial sum. Uses the radial and
/// angular counts of `resolution`; the time count is ignored.
pub fn truncation_error(wv: &WaveVector, radius: f64, degree: u32, resolution: Resolution) -> f64 {
    let (nodes, weights) = spatial_rule(Dimension::ThreeD, radius, resolution.radial, resolution.angular);
    let (err, total) = nodes
        .par_iter()
        .zip(&weights)
        .map(|(p, w)| {
            let exact = plane_wave(wv, *p, 0.0);
            let partial = jacobi_anger_partial(wv, *p, degree);
            (w * (exact - partial).norm_sqr(), w * exact.norm_sqr())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    if total == 0.0 {
        0.0
    } else {
        (err / total).sqrt()
    }
}
