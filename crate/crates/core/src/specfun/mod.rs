//! Scalar special functions behind the wave-mode basis.
//!
//! Everything here is pure double-precision arithmetic with no shared state.

mod bessel;
mod harmonics;
mod legendre;

pub use bessel::{bessel_j, bessel_j_upto, spherical_bessel_j, spherical_bessel_j_upto};
pub use harmonics::{sph_harm, Angle, HarmonicTable};
pub use legendre::{assoc_legendre, legendre_p, NormalizedLegendre};
