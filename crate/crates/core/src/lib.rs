//! Exact solver for systems of two bivariate polynomial equations.
//!
//! Both variables are eliminated in turn by resultants, the real roots of
//! each projection are isolated, and candidate pairs are accepted or rejected
//! by certified evaluation against a separation threshold.

pub mod bench;
pub mod error;
pub mod exact_arith;
pub mod matcher;
pub mod par;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod bound;
pub mod isolation;
pub mod resultant;

pub use error::{Error, ParseError, Result};
