//! The large-radius limit: `z2 = 1/(3 g_s^2 u^3)`, the change of variable
//! `z1 = z2 + phi_u(z2)` onto the double-scaling variable, and the
//! transseries solution of the u-equation built on top of it.
//!
//! The genus-one term of `H^(0)` is fixed only up to an additive constant;
//! the constant is taken to be zero beyond `-1/u + (1/2) log u`.

pub mod numeric;
pub mod series;
pub mod transseries;

pub use numeric::{
    lr_connection_check, lr_point, lr_real_check, lr_sum, r_value, LrPoint, LrRealValue, LrValue,
};
pub use series::{
    c_minus_plus, gen_h0, gen_hn, gen_phi_u, gen_r, lambda_sq_coeffs, u_equation_residual, Grading,
    HnSeries, UCoeffSeries,
};
pub use transseries::{
    expand_composed, lr_bridge_check, lr_bridge_residuals, lr_stokes_check, lr_transseries,
    LrBridge, LrKey,
};

/// Convention note attached to every `H^(0)` output.
pub const H1_CONVENTION: &str = "genus-one additive constant fixed to 0 beyond -1/u + (1/2) log u";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LrError {
    #[error("series with different gradings or prefactors")]
    Grading,
    #[error("route disagreement: {0}")]
    RouteMismatch(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
    #[error(transparent)]
    Hae(#[from] crate::hae::HaeError),
    #[error(transparent)]
    Alien(#[from] crate::alien::AlienError),
    #[error(transparent)]
    Borel(#[from] crate::borel::BorelError),
}
