//! Error type shared by every module of the crate.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not anti-Hermitian (residual {residual:e})")]
    NotAntiHermitian { residual: f64 },

    #[error("matrix is not traceless (|tr| = {trace:e})")]
    NotTraceless { trace: f64 },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("arguments belong to different spaces or the wrong space")]
    MixedSpace,

    #[error("rank parameter n = {n} is too small (need n >= 2)")]
    RankTooSmall { n: usize },

    #[error("point is not regular: minimal eigenvalue gap {min_gap:e}")]
    NonRegular { min_gap: f64 },

    #[error("chamber coordinates are not strictly decreasing at index {index}")]
    NotDecreasing { index: usize },

    #[error("spin has nonzero diagonal (max |Z_ii| = {max_diag:e})")]
    DiagonalNotZero { max_diag: f64 },

    #[error("no point of the orbit with zero diagonal was found (best residual {best_residual:e})")]
    NoIntersection { best_residual: f64 },

    #[error("orbit spec is not rank-one minimal: {reason}")]
    NotMinimalOrbit { reason: String },

    #[error("finite-difference step {h:e} is too small")]
    StepUnderflow { h: f64 },

    #[error("ill-conditioned least-squares solve (residual {residual:e})")]
    IllConditioned { residual: f64 },

    #[error("trajectory reached a chamber wall at t = {t} (gap {min_gap:e})")]
    WallCollision { t: f64, min_gap: f64 },

    #[error("structural drift {drift:e} exceeded the bound at t = {t}")]
    StructuralDrift { t: f64, drift: f64 },

    #[error("spin sign could not be resolved (residuals: plus {plus:e}, minus {minus:e})")]
    SpinSignUnresolved { plus: f64, minus: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
