//! Artifact plumbing for the `wavedof` binary: config resolution, parameter
//! sweeps, CSV/JSON/SVG writers and the verification experiment.

pub mod commands;
pub mod config;
pub mod metadata;
pub mod svg;
pub mod sweep;

use wavedof_core::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_RESOLUTION: i32 = 4;
/// I/O and anything not covered by the stable codes.
pub const EXIT_OTHER: i32 = 1;

/// Map an error chain onto the process exit-code contract.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::ModeCapExceeded { .. } | Error::CountOverflow => EXIT_CAP,
                Error::UnderResolved { .. } => EXIT_RESOLUTION,
                Error::InvalidConfig(_)
                | Error::BandEdgeBelowZero(_)
                | Error::NonPositiveTime(_)
                | Error::ZeroMeasure { .. }
                | Error::InvalidPolicy(_) => EXIT_CONFIG,
                _ => EXIT_OTHER,
            };
        }
    }
    EXIT_OTHER
}
