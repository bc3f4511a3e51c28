use thiserror::Error;

use crate::scalar::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("argument {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("odd operator: Fitting components are only available in ungraded mode")]
    OddOperator,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("k = {k} outside 2..={n}")]
    BadArity { k: usize, n: usize },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("operation requires a finite field")]
    FiniteFieldRequired,
    #[error("parity obstruction: {0}")]
    ParityObstruction(String),
    #[error("incompatible algebras: {0}")]
    IncompatibleAlgebras(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("bad decomposition: {0}")]
    BadDecomposition(String),
    #[error("subspace is not closed under the bracket")]
    NotHmc,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),
    #[error("parse error: {0}")]
    Parse(String),
}
