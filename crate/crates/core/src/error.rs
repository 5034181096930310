//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameter combination violates a model invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Operation requested in a regime that does not support it.
    #[error("regime error: {0}")]
    Regime(String),

    /// Scalar argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Grid cannot resolve or contain the requested profile.
    #[error("grid resolution error: {0}")]
    GridResolution(String),

    /// Fields live on incompatible grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Requested spatial shift does not fit in the periodic box.
    #[error("shift {shift} exceeds half the box size {half_box}")]
    ShiftOutOfBox { shift: f64, half_box: f64 },

    /// Mass reached the outer region of the box; results past `t` are invalid.
    #[error("boundary leak at t = {t}: outer-region mass fraction {fraction:.3e} exceeds {limit:.3e}")]
    BoundaryLeak { t: f64, fraction: f64, limit: f64 },

    /// First-integral drift per step exceeded the reject threshold.
    #[error("step rejected at t = {t}: first-integral drift {drift:.3e} per step (reduce dt)")]
    StepRejected { t: f64, drift: f64 },

    /// Integrator produced a non-positive tau; signals a solver bug.
    #[error("non-positive tau at t = {t}; solver bug")]
    NonPositiveTau { t: f64 },

    /// Trajectory classification ran out of horizon without a verdict.
    #[error("classification inconclusive after t = {horizon}")]
    Inconclusive { horizon: f64 },

    /// Bad experiment configuration (unknown key, unparsable value, ...).
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
