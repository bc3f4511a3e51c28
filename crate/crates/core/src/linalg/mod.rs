//! Exact linear algebra: echelon forms, canonical (graded) subspaces, operator
//! powers, Fitting components and nilpotency of operator envelopes.

mod matrix;
mod operator;
mod subspace;

pub use matrix::Matrix;
pub use operator::{
    envelope_nilpotency, fitting_decomposition, fitting_decomposition_ungraded, matrix_nilpotency,
    operator_nilpotency, LinearOperator, Nilpotency,
};
pub use subspace::{GradedSubspace, Grading, Subspace};
