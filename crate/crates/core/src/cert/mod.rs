//! α-theory certification: Newton's method, the β/γ/α bounds, Newton
//! invariant sets and the membership loop built on them.

mod bounds;
mod certify;
mod invariant;

pub use bounds::{
    approx_solution_threshold, beta_sq, gamma_sq_upper, is_approximate_solution, newton_step,
    same_root, CertBounds, Certifier,
};
pub(crate) use certify::coordinate_nonreal;
pub use certify::{
    certify_coordinate_nonreal, certify_distinct, certify_in_v, refine, CertOptions, CertReport,
    Outcome,
};
pub use invariant::{delta_sq, project_onto_v, InvariantSetSpec};
