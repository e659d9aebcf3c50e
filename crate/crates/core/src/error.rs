//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced anywhere in the estimation chain.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: String,
        right: String,
    },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("eigenvalue iteration failed to converge within {iterations} iterations")]
    EigenConvergence { iterations: usize },

    #[error("matrix dimension {dim} exceeds supported maximum {max}")]
    DimensionUnsupported { dim: usize, max: usize },

    #[error("linear system is singular to working precision ({context})")]
    SingularSystem { context: &'static str },

    #[error("invalid array configuration: {0}")]
    InvalidArrayConfig(String),

    #[error("invalid gain/phase vector: {0}")]
    InvalidGainPhase(String),

    #[error("invalid target scene: {0}")]
    InvalidScene(String),

    #[error("angle {theta_rad} rad is outside the open interval (-pi/2, pi/2)")]
    AngleOutOfRange { theta_rad: f64 },

    #[error("rotation eigenvalue magnitude {magnitude:.3} outside sanity range [0.5, 2]")]
    RotationMagnitude { magnitude: f64 },

    #[error("rotation phase maps to |sin(theta)| = {sin_theta:.3} > 1; spacing too large")]
    RotationUnresolvable { sin_theta: f64 },

    #[error("subspace order {k} out of range 1..{max}")]
    SubspaceOrder { k: usize, max: usize },

    #[error("spectrum under-resolved: found {found} local maxima, need {wanted}")]
    UnderResolved { found: usize, wanted: usize },

    #[error("rank-deficient subarray Gram matrix ({context})")]
    RankDeficient { context: &'static str },

    #[error("local-search windows overlap: DOAs {left_deg:.3} and {right_deg:.3} deg closer than 2x window")]
    OverlappingWindows { left_deg: f64, right_deg: f64 },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("failed to parse config: {0}")]
    ConfigParse(#[from] serde_json::Error),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
