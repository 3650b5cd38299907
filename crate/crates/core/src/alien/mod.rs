//! Exact alien calculus on the algebra generated by `g`, `f`, `E = e^(f-g)`
//! and `e^(-2z)`.

pub mod checks;
pub mod element;
pub mod fuzz;
pub mod ops;
pub mod poly;

pub use checks::{
    bridge_check, bridge_residuals, companion_f, deltaplus_table, expand_to_series,
    formal_integral, stokes_action_check, BridgeResiduals, DeltaPlusEntry, Direction,
};
pub use element::{Caps, Frame, Lin, Mono, TransElement};
pub use ops::{te_apply, AlienOp};
pub use poly::{Poly, Var};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlienError {
    #[error("g appears at most linearly: product of two linear generators")]
    NonlinearLin,
    #[error("elements live in different frames")]
    FrameMismatch,
    #[error("inconsistent caps: {0}")]
    CapInconsistency(String),
    #[error("admissibility violation: {0}")]
    Admissibility(String),
    #[error("missing cap: {0}")]
    MissingCap(String),
    #[error("unknown operator: {0}")]
    InvalidOp(String),
    #[error("cannot expand: {0}")]
    NotExpandable(String),
    #[error("route disagreement: {0}")]
    RouteMismatch(String),
    #[error(transparent)]
    Hae(#[from] crate::hae::HaeError),
}
