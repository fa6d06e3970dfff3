//! Exact piecewise-linear homeomorphism groups of the line and the circle,
//! and checkers for the finite certificates behind chain and ring groups.

pub mod chain;
pub mod cvgraph;
pub mod error;
pub mod exactnum;
pub mod higman;
pub mod plmap;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
