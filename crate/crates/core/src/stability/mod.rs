//! Ping-pong certificates and depth-bounded stability checks.

mod disk;
mod margin;
mod orbit;
mod pingpong;
mod qg;
mod sweep;

pub use disk::Disk;
pub use margin::{
    recheck_fail, stability_margin, ElementRecord, FailCause, InconclusiveReason, SeparabilityStatus,
    StabilityParams, StabilityReport, StabilityVerdict, CSV_HEADER, PARABOLIC_MARGIN,
};
pub use orbit::{displacement, orbit_path};
pub use pingpong::{
    ping_pong_verify, DiskPair, PingPongDisks, PingPongReport, VerifiedDisks, BOUNDARY_SAMPLES, PING_PONG_MARGIN,
    RESIDUAL_TOL,
};
pub use qg::{qg_constants, qg_constants_with, QgFit, DEFAULT_A_MAX};
pub use sweep::{sweep, write_sweep_csv, RepFamily, SweepPoint, SweepRow};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilityError {
    #[error("expected {expected} disk entries, got {got}")]
    DiskCountMismatch { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("path has {0} points, need at least 2")]
    PathTooShort(usize),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Hyperbolic(#[from] crate::hyperbolic::HyperbolicError),
    #[error(transparent)]
    Separability(#[from] crate::separability::SeparabilityError),
}
