use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NonHermitianInput { defect: f64 },
    #[error("matrix is not unitary (max |U†U - I| = {defect:.3e})")]
    NonUnitaryInput { defect: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("drive frequencies differ ({omega1:e} vs {omega2:e} rad/s); this propagator needs a common drive")]
    UnequalDriveFrequencies { omega1: f64, omega2: f64 },
    #[error("integrator step {dt:e} s exceeds the limit {limit:e} s (20 steps per drive period)")]
    StepTooLarge { dt: f64, limit: f64 },
    #[error("invalid integrator configuration: {0}")]
    InvalidIntegrator(String),
    #[error("time grid must be ascending and non-negative")]
    InvalidTimeGrid,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("invalid configuration field `{field}`: {reason}")]
    Config { field: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
