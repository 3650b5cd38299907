//! Borel–Laplace summation of the family and its numerical consequences.

pub mod airy;
pub mod family;
pub mod kernels;
pub mod laplace;
pub mod quad;
pub mod singular;

pub use airy::{airy_oracle, AiryValue};
pub use family::{
    connection_check, g_pm, linear_identity_residual, median_real_check, ode_fd_residual,
    sum_family, Family, GValue, Lateral, MedianValue, Ray, Residual, Side, SumConfig,
};
pub use kernels::{bhat_maclaurin, eval_ahat, eval_bhat, Branch, LogPoint};
pub use laplace::{choose_theta, laplace_ray, Interval, SumValue};
pub use singular::{gevrey_check, singularity_locate, GevreyTable, Method, SingularityEstimate};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BorelError {
    #[error("branch cut")]
    BranchCut,
    #[error("quadrature failure: best value {best} with estimate {err:e}")]
    QuadratureFailure { best: Complex64, err: f64 },
    #[error("outside half-plane: no direction with Re(z e^(i theta)) > 0")]
    OutsideHalfPlane,
    #[error("domain empty: {0}")]
    DomainEmpty(String),
    #[error("branch error: logarithm on the negative real axis")]
    BranchError,
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("insufficient coefficients: {0} given, at least 40 needed")]
    InsufficientCoefficients(usize),
    #[error(transparent)]
    Hae(#[from] crate::hae::HaeError),
}
