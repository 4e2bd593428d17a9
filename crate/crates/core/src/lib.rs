//! Explicit constants for Turing's method and a desk-scale zero-count
//! certification pipeline for the Riemann zeta-function.

// Negated float comparisons are how arguments reject NaN along with
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod gram;
pub mod kernel;
pub mod optimizer;
mod quad;
pub mod riemann_siegel;

pub use error::{Error, Result};
