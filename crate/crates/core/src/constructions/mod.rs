//! Concrete extremal objects and counterexamples: Paley–Hadamard designs,
//! projective planes, type-1 λ-designs and spherical two-distance sets.
//!
//! Every constructor re-checks the property it promises and fails with
//! [`crate::Error::Internal`] if its own output does not satisfy it.

mod designs;
mod two_distance;

pub use designs::{
    fano, hadamard_design, hadamard_plus_full, lambda_design_type1, near_pencil, projective_lambda_design,
    projective_plane, symmetric_design_params, SymmetricDesignParams, MAX_PLANE_ORDER,
};
pub use two_distance::{
    johnson_pairs, lines_meet, pentagon, schlafli27, schlafli_labels, schlafli_with_values, GramTwoDistance,
    SchlafliLabel,
};
