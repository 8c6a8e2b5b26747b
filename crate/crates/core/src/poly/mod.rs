//! Sparse multivariate polynomials over the Gaussian rationals.

mod float;
mod format;
mod polynomial;
mod structure;
mod system;

pub use float::FloatSystem;
pub use format::{parse_points, parse_system, serialize_points, serialize_system};
pub use polynomial::{Exponents, Polynomial};
pub use structure::{
    assemble_structured, infer_block_structure, validate_block_structure, BlockStructure,
    ValidationFailure, ValidationReport,
};
pub use system::PolynomialSystem;
