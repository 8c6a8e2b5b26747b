//! Tritangent planes of space sextics: the polynomial system, a heuristic
//! floating-point solver and the certified classification pipeline.

mod classify;
mod curve;
mod solve;
mod system;

pub use classify::{
    classify_tritangents, CandidateStatus, ClassificationReport, ClassifyOptions,
    RepresentativeReport, TritangentClass, TritangentCounts, MAX_TRITANGENTS,
};
pub use curve::{monomials, parse_curve, serialize_curve, SexticCurve};
pub use solve::{
    damped_newton, dedup_prefix, float_multistart, float_tritangents, lift, lift_and_refine,
    multistart_solve, multistart_solve_with, scaled_condition, MultistartOptions,
};
pub use system::{
    build_tritangent_system, canonicalize_candidate, TritangentCandidate, TritangentStructures,
    BLOCK, DIM,
};
