//! Exact scalars, Laurent polynomials and truncated power series.

pub mod laurent;
pub mod scalar;
pub mod series;

pub use laurent::Laurent;
pub use scalar::{binom, binom_q, q, q_to_f64, qi, Coeff, ExactFmt, ExactScalar, Gauss, Q};
pub use series::{
    ps_arith, ps_compose, ps_diff, ps_log_exp, ArithKind, LogExp, PowerSeries, DEFAULT_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("not a unit")]
    NotAUnit,
    #[error("wrong constant term")]
    WrongConstantTerm,
    #[error("parse error: {0}")]
    Parse(String),
}
