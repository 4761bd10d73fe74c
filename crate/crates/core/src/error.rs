use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient list is empty or all zero")]
    EmptyPolynomial,
    #[error("constant polynomials have no lemniscate structure")]
    ConstantPolynomial,
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("non-finite coefficient at index {index}")]
    NonFiniteCoefficient { index: usize },

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("|P(z)| = {modulus:e} is numerically zero at z = {z}")]
    DivisionNearZero { z: Complex64, modulus: f64 },

    #[error("no crossing of level {level} found on {attempts} rays from {anchor}")]
    SeedNotFound {
        anchor: Complex64,
        level: f64,
        attempts: usize,
    },
    #[error("level {level} is too close to critical value {critical_value}")]
    CriticalLevelTooClose { level: f64, critical_value: f64 },
    #[error("level curve at {level} exceeded {max_points} points without closing")]
    TraceOverflow { level: f64, max_points: usize },
    #[error("arg P jumps by {jump} rad between samples {index} and {next}")]
    ArgumentJumpTooLarge {
        index: usize,
        next: usize,
        jump: f64,
    },
    #[error("curve at level {level} is not closed")]
    CurveNotClosed { level: f64 },
    #[error("enclosed zero count dropped from {previous} to {current} at level {level}")]
    MonotonicityViolated {
        level: f64,
        previous: i64,
        current: i64,
    },

    #[error("descent flow from {start} stalled")]
    FlowStalled { start: Complex64 },
    #[error("level {level} is within the critical gap of critical value {critical_value}")]
    LevelAtCriticalValue { level: f64, critical_value: f64 },

    #[error("|P'(f(w))| = {derivative:e} fell below the floor at w = {w}")]
    CriticalPointHit { w: Complex64, derivative: f64 },
    #[error("inverse-branch continuation diverged at w = {w}")]
    ContinuationDiverged { w: Complex64 },

    #[error("invalid condenser: {0}")]
    InvalidCondenser(String),
    #[error("SOR did not converge: residual {residual:e} after {sweeps} sweeps")]
    SolverNotConverged { sweeps: usize, residual: f64 },
    #[error("puncture radius {rho} is below 3 local cell widths ({cell_width})")]
    PunctureBelowResolution { rho: f64, cell_width: f64 },

    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Parse and input errors, as opposed to numerical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyPolynomial
                | Error::ConstantPolynomial
                | Error::DegreeTooLarge { .. }
                | Error::NonFiniteCoefficient { .. }
                | Error::InvalidCondenser(_)
                | Error::Parse(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }
}
