use nalgebra::DMatrix;
use num_complex::Complex64;

use super::grid::{Resolution, SpaceTimeGrid};
use crate::config::{ceil_tol, PhysicalConfig};
use crate::error::{Error, Result};
use crate::modes::{max_degree, sample_space_factors, sample_time_factors, ModeIndex};

/// Smallest time and angular node counts that resolve `modes` over the band.
///
/// Time: `4(F_o + W)T + 8`, over two samples per cycle with margin.
/// Angular: `2·max degree + 1`, exact for products of two harmonics.
/// No radial floor is imposed; the returned radial count is 1.
pub fn required_resolution(modes: &[ModeIndex], cfg: &PhysicalConfig) -> Resolution {
    let time = ceil_tol(4.0 * cfg.upper_edge() * cfg.duration + 8.0).max(1.0) as usize;
    let angular = 2 * max_degree(modes) as usize + 1;
    Resolution::new(1, angular, time)
}

/// A grid that meets [`required_resolution`] with enough radial nodes for
/// the highest wave-number in `modes`.
pub fn recommended_resolution(modes: &[ModeIndex], cfg: &PhysicalConfig) -> Resolution {
    let req = required_resolution(modes, cfg);
    let kr = cfg.wavenumber(cfg.upper_edge()) * cfg.radius;
    let radial = ((kr + max_degree(modes) as f64) / 2.0).ceil() as usize + 8;
    Resolution::new(radial, req.angular, req.time)
}

fn check_resolution(modes: &[ModeIndex], grid: &SpaceTimeGrid, cfg: &PhysicalConfig) -> Result<()> {
    let req = required_resolution(modes, cfg);
    let actual = grid.resolution;
    if actual.time < req.time || actual.angular < req.angular {
        return Err(Error::UnderResolved { required: req, actual });
    }
    Ok(())
}

/// `G[p][q] = Σ w · mode_p · conj(mode_q)` over the grid.
///
/// Modes and weights both factor into space and time, so `G` is the
/// elementwise product of a spatial and a temporal Gram. The upper triangle
/// is computed and mirrored, so `G == Gᴴ` exactly.
pub fn gram_of_modes(modes: &[ModeIndex], grid: &SpaceTimeGrid, cfg: &PhysicalConfig) -> Result<DMatrix<Complex64>> {
    cfg.validate()?;
    check_resolution(modes, grid, cfg)?;
    let space = weighted(sample_space_factors(modes, &grid.space_nodes, cfg), &grid.space_weights);
    let time = weighted(sample_time_factors(modes, &grid.time_nodes, cfg), &grid.time_weights);
    // (AᴴA)[q][p] = Σ conj(a_q) a_p = G[p][q].
    let gs = space.ad_mul(&space);
    let gt = time.ad_mul(&time);
    let n = modes.len();
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for p in 0..n {
        g[(p, p)] = Complex64::new(gs[(p, p)].re * gt[(p, p)].re, 0.0);
        for q in p + 1..n {
            let v = gs[(q, p)] * gt[(q, p)];
            g[(p, q)] = v;
            g[(q, p)] = v.conj();
        }
    }
    Ok(g)
}

/// Rows scaled by `√w`.
pub(crate) fn weighted(mut m: DMatrix<Complex64>, weights: &[f64]) -> DMatrix<Complex64> {
    for (mut row, w) in m.row_iter_mut().zip(weights) {
        row *= Complex64::new(w.sqrt(), 0.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Dimension;
    use crate::modes::{enumerate_modes, sample_modes, Bin};
    use crate::rankcheck::build_grid;

    fn natural() -> PhysicalConfig {
        PhysicalConfig::with_wave_speed(0.3, 1.0, 1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn single_mode_entry_is_positive() {
        let cfg = natural();
        let modes = [ModeIndex {
            bin: Bin::Harmonic(2),
            n: 1,
            m: 1,
            dim: Dimension::ThreeD,
        }];
        let res = recommended_resolution(&modes, &cfg);
        let grid = build_grid(Dimension::ThreeD, &cfg, res).unwrap();
        let g = gram_of_modes(&modes, &grid, &cfg).unwrap();
        assert_eq!(g.shape(), (1, 1));
        assert!(g[(0, 0)].re > 0.0 && g[(0, 0)].im == 0.0);
    }

    #[test]
    fn exactly_hermitian_and_matches_direct_sum() {
        let cfg = natural();
        for dim in [Dimension::TwoD, Dimension::ThreeD] {
            let modes = enumerate_modes(dim, &cfg).unwrap();
            let grid = build_grid(dim, &cfg, recommended_resolution(&modes, &cfg)).unwrap();
            let g = gram_of_modes(&modes, &grid, &cfg).unwrap();
            assert_eq!(g, g.adjoint());
            let a = weighted(sample_modes(&modes, &grid, &cfg), &grid.weights());
            let direct = a.ad_mul(&a).transpose();
            let scale = direct.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!((&g - &direct).iter().all(|z| z.norm() <= 1e-12 * scale));
        }
    }

    #[test]
    fn distinct_bins_are_orthogonal_in_time() {
        let cfg = natural();
        let modes = enumerate_modes(Dimension::TwoD, &cfg).unwrap();
        let grid = build_grid(Dimension::TwoD, &cfg, recommended_resolution(&modes, &cfg)).unwrap();
        let g = gram_of_modes(&modes, &grid, &cfg).unwrap();
        for (p, a) in modes.iter().enumerate() {
            for (q, b) in modes.iter().enumerate() {
                if a.bin != b.bin {
                    assert!(g[(p, q)].norm() <= 1e-12 * g[(p, p)].re);
                }
            }
        }
    }

    #[test]
    fn rejects_coarse_grid() {
        let cfg = natural();
        let modes = enumerate_modes(Dimension::ThreeD, &cfg).unwrap();
        let req = required_resolution(&modes, &cfg);
        assert_eq!(req.time, 20);
        let short = Resolution::new(6, req.angular, req.time - 1);
        let grid = build_grid(Dimension::ThreeD, &cfg, short).unwrap();
        match gram_of_modes(&modes, &grid, &cfg) {
            Err(Error::UnderResolved { required, actual }) => {
                assert_eq!(required, req);
                assert_eq!(actual, short);
            }
            other => panic!("expected UnderResolved, got {other:?}"),
        }
        let narrow = Resolution::new(6, req.angular - 1, req.time);
        let grid = build_grid(Dimension::ThreeD, &cfg, narrow).unwrap();
        assert!(gram_of_modes(&modes, &grid, &cfg).is_err());
    }
}
