//! Exact-arithmetic certification of real solutions of polynomial systems.
//!
//! Points approximating roots of a square polynomial system are certified
//! with Smale's α-theory in exact Gaussian-rational arithmetic. Besides the
//! classical test for "every coordinate of the root is real", the crate
//! decides reality of coordinate projections using conjugate-pair
//! Newton-invariant sets, and applies this to counting real and totally real
//! tritangent planes of space sextic curves.

pub mod arith;
pub mod cert;
pub mod error;
pub mod poly;
pub mod report;
pub mod tritangent;

pub use error::{Error, Result};
