//! Exact and numeric resurgence toolkit for the double-scaling and
//! large-radius limits of the topological-string free energy.

pub mod alien;
pub mod borel;
pub mod cli;
pub mod exact;
pub mod hae;
pub mod large_radius;
pub mod verify;
