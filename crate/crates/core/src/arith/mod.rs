//! Exact scalar and linear-algebra substrate.

mod gaussian;
mod linalg;
mod rounding;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub(crate) use gaussian::GaussInt;
pub use gaussian::{rational_to_f64, GaussianRational};
pub(crate) use linalg::FractionFree;
pub use linalg::{inverse, norm_sq, solve_linear, solve_linear_multi, CMatrix, CVector};
pub use rounding::{
    dyadic_round, dyadic_round_rational, dyadic_round_vector, parse_decimal, sqrt_bracket,
    to_scientific, Direction,
};
