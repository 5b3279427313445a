//! Cone metrics `dr² + (αr/2π)² dθ²`, the smoothing kernel, and the smoothed
//! metric `dr² + φ(r)² dθ²` with
//! `φ(r) = (f(r/ρ)(α/2π − 1) + 1) r`.

mod kernel;
mod metric;

pub use kernel::{
    certify_kernel, kernel_eval, Derivative, KernelCertificate, Rescaled, SmoothingKernel, TransitionKernel,
    KERNEL_BOUND,
};
pub use metric::{ConeMetric, SmoothedCone, DISTORTION_GRID};

use thiserror::Error;

use crate::quadrature::QuadratureError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("kernel argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("radius {r} is outside the domain (0, ∞)")]
    OutOfDomain { r: f64 },
    #[error("finite-difference step {h} is too large for radius {r} (need h < r/4)")]
    StepTooLarge { r: f64, h: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(#[from] QuadratureError),
    #[error("kernel bound violated: |{derivative}| reaches {value} at t = {t} (limit {limit})")]
    BoundViolation {
        derivative: Derivative,
        t: f64,
        value: f64,
        limit: f64,
    },
    #[error("kernel does not vanish at the tip: {derivative} = {value} at t = {t}")]
    VanishingViolation { derivative: Derivative, t: f64, value: f64 },
    #[error("kernel is not the constant 1 beyond t = 1: {derivative} = {value} at t = {t}")]
    PlateauViolation { derivative: Derivative, t: f64, value: f64 },
    #[error("kernel value {value} at t = {t} is outside [0, 1]")]
    RangeViolation { t: f64, value: f64 },
}

impl ConeError {
    pub fn code(&self) -> &'static str {
        match self {
            ConeError::NonPositiveArgument(_) => "NonPositiveArgument",
            ConeError::OutOfDomain { .. } => "OutOfDomain",
            ConeError::StepTooLarge { .. } => "StepTooLarge",
            ConeError::InvalidParameter(_) => "InvalidParameter",
            ConeError::QuadratureFailure(_) => "QuadratureFailure",
            ConeError::BoundViolation { .. } => "BoundViolation",
            ConeError::VanishingViolation { .. } => "VanishingViolation",
            ConeError::PlateauViolation { .. } => "PlateauViolation",
            ConeError::RangeViolation { .. } => "RangeViolation",
        }
    }
}
