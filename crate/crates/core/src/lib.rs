pub mod algebra;
pub mod catalog;
pub mod conformance;
pub mod engel;
pub mod error;
pub mod format;
pub mod lattice;
pub mod linalg;
pub mod parity;
pub mod representation;
pub mod scalar;
pub mod series;
pub mod subalgebra;

pub use algebra::{
    canonicalize_tuple, BasisElement, Homogeneity, NLieSuperalgebra, SuperVector, ValidationReport,
    Witness,
};
pub use error::{Error, Result};
pub use linalg::{GradedSubspace, Grading, LinearOperator, Matrix, Nilpotency, Subspace};
pub use parity::Parity;
pub use scalar::{Field, Scalar};
