use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{GradedSubspace, Grading, Matrix, Subspace};
use crate::parity::Parity;

/// A square matrix on a graded space that has a definite parity.
///
/// Column `j` holds the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOperator {
    matrix: Matrix,
    parity: Parity,
    grading: Grading,
}

impl LinearOperator {
    /// Fails unless every entry that would move a basis vector by the wrong
    /// parity is zero.
    pub fn new(matrix: Matrix, parity: Parity, grading: Grading) -> Result<LinearOperator> {
        if !matrix.is_square() || matrix.rows() != grading.len() {
            return Err(Error::AmbientMismatch(format!(
                "{}x{} operator on a space of dimension {}",
                matrix.rows(),
                matrix.cols(),
                grading.len()
            )));
        }
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if grading.parity(i) != grading.parity(j) + parity && !matrix[(i, j)].is_zero() {
                    return Err(Error::InvalidAlgebra(format!(
                        "entry ({i},{j}) is inconsistent with operator parity {parity}"
                    )));
                }
            }
        }
        Ok(LinearOperator {
            matrix,
            parity,
            grading,
        })
    }

    /// The parity of `matrix` on `grading`, if it has one. The zero matrix is even.
    pub fn infer_parity(matrix: &Matrix, grading: &Grading) -> Option<Parity> {
        let mut seen = None;
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if matrix[(i, j)].is_zero() {
                    continue;
                }
                let p = grading.parity(i) + grading.parity(j);
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    /// Minimal `k` with `f^k = 0` (for an operator) or `W_k = 0` (for an envelope).
    Nilpotent(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Nilpotent(_))
    }
}

/// Nilpotency of any square matrix: nilpotent iff `f^d = 0`, index minimal.
pub fn matrix_nilpotency(f: &Matrix) -> Nilpotency {
    assert!(f.is_square(), "nilpotency of a non-square matrix");
    let d = f.rows();
    if f.pow(d.max(1)).is_zero() {
        let mut power = Matrix::identity(f.field(), d);
        for k in 0..=d {
            if power.is_zero() {
                return Nilpotency::Nilpotent(k);
            }
            power = power.mul(f).expect("square");
        }
        unreachable!("f^d = 0 but no smaller power vanished");
    }
    Nilpotency::NotNilpotent
}

pub fn operator_nilpotency(f: &LinearOperator) -> Nilpotency {
    matrix_nilpotency(f.matrix())
}

/// Ungraded Fitting components `(ker f^d, im f^d)` of any square matrix.
pub fn fitting_decomposition_ungraded(f: &Matrix) -> (Subspace, Subspace) {
    assert!(
        f.is_square(),
        "Fitting decomposition of a non-square matrix"
    );
    let d = f.rows();
    let fd = f.pow(d);
    let zero = Subspace::span(f.field(), d, &fd.kernel()).expect("kernel vectors");
    let one = Subspace::span(f.field(), d, &fd.columns()).expect("image vectors");
    (zero, one)
}

/// Fitting decomposition `V = V₀ ⊕ V₁` of an even operator: `f` is nilpotent
/// on `V₀ = ker f^d` and invertible on `V₁ = im f^d`.
///
/// Odd operators are rejected with [`Error::OddOperator`]; use
/// [`fitting_decomposition_ungraded`] for those.
pub fn fitting_decomposition(f: &LinearOperator) -> Result<(GradedSubspace, GradedSubspace)> {
    if f.parity().is_odd() && !f.matrix().is_zero() {
        return Err(Error::OddOperator);
    }
    let (zero, one) = fitting_decomposition_ungraded(f.matrix());
    let zero =
        GradedSubspace::from_subspace(f.grading(), &zero).expect("kernel of an even map is graded");
    let one =
        GradedSubspace::from_subspace(f.grading(), &one).expect("image of an even map is graded");
    Ok((zero, one))
}

/// Nilpotency of the associative algebra generated by `ops`.
///
/// With `W₁ = span(ops)` and `W_{k+1} = span{A·B : A ∈ W₁, B ∈ W_k}`, returns the
/// minimal `k` with `W_k = 0`. A nilpotent algebra of `d x d` matrices satisfies
/// `W_d = 0`, so a nonzero `W_d` means the envelope is not nilpotent.
pub fn envelope_nilpotency(dim: usize, ops: &[Matrix]) -> Result<Nilpotency> {
    let Some(first) = ops.first() else {
        return Ok(Nilpotency::Nilpotent(1));
    };
    let field = first.field();
    for op in ops {
        if op.rows() != dim || op.cols() != dim {
            return Err(Error::AmbientMismatch(format!(
                "{}x{} operator in an envelope on dimension {dim}",
                op.rows(),
                op.cols()
            )));
        }
        if op.field() != field {
            return Err(Error::FieldMismatch(field, op.field()));
        }
    }
    let span_of = |ms: &[Matrix]| -> Subspace {
        let flat: Vec<_> = ms.iter().map(Matrix::flatten).collect();
        Subspace::span(field, dim * dim, &flat).expect("flattened operators")
    };
    let unflatten = |s: &Subspace| -> Vec<Matrix> {
        s.basis_vectors()
            .into_iter()
            .map(|v| Matrix::from_flat(field, dim, dim, v))
            .collect()
    };
    let generators = unflatten(&span_of(ops));
    let mut current = generators.clone();
    for k in 1..=dim.max(1) {
        if current.is_empty() {
            return Ok(Nilpotency::Nilpotent(k));
        }
        let products: Vec<Matrix> = generators
            .iter()
            .flat_map(|a| {
                current
                    .iter()
                    .map(move |b| a.mul(b).expect("same dimension"))
            })
            .collect();
        current = unflatten(&span_of(&products));
    }
    Ok(if current.is_empty() {
        Nilpotency::Nilpotent(dim.max(1) + 1)
    } else {
        Nilpotency::NotNilpotent
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn all_even(n: usize) -> Grading {
        Grading::new(vec![Parity::Even; n])
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let op = LinearOperator::new(m, Parity::Even, all_even(3)).unwrap();
        assert_eq!(operator_nilpotency(&op), Nilpotency::Nilpotent(3));
    }

    #[test]
    fn identity_is_not_nilpotent() {
        let op = LinearOperator::new(
            Matrix::identity(Field::Prime(2), 2),
            Parity::Even,
            all_even(2),
        )
        .unwrap();
        assert_eq!(operator_nilpotency(&op), Nilpotency::NotNilpotent);
    }

    #[test]
    fn parity_inconsistent_blocks_are_rejected() {
        let f = Field::Prime(3);
        let g = Grading::new(vec![Parity::Odd, Parity::Even]);
        let swap = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
        assert!(LinearOperator::new(swap.clone(), Parity::Even, g.clone()).is_err());
        assert!(LinearOperator::new(swap.clone(), Parity::Odd, g.clone()).is_ok());
        assert_eq!(LinearOperator::infer_parity(&swap, &g), Some(Parity::Odd));
    }

    #[test]
    fn fitting_of_nilpotent_and_invertible() {
        let f = Field::Prime(5);
        let g = all_even(2);
        let n = LinearOperator::new(
            Matrix::from_i64(f, &[&[0, 1], &[0, 0]]),
            Parity::Even,
            g.clone(),
        )
        .unwrap();
        let (v0, v1) = fitting_decomposition(&n).unwrap();
        assert!(v0.is_full() && v1.is_zero());
        let inv =
            LinearOperator::new(Matrix::from_i64(f, &[&[2, 1], &[0, 3]]), Parity::Even, g).unwrap();
        let (v0, v1) = fitting_decomposition(&inv).unwrap();
        assert!(v0.is_zero() && v1.is_full());
    }

    #[test]
    fn odd_operator_requires_ungraded_mode() {
        let f = Field::Prime(3);
        let g = Grading::new(vec![Parity::Odd, Parity::Even]);
        let m = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        let op = LinearOperator::new(m.clone(), Parity::Odd, g).unwrap();
        assert_eq!(fitting_decomposition(&op), Err(Error::OddOperator));
        let (v0, v1) = fitting_decomposition_ungraded(&m);
        assert_eq!(v0.dim() + v1.dim(), 2);
    }

    #[test]
    fn envelope_examples() {
        let q = Field::Rational;
        let e12 = Matrix::from_i64(q, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e23 = Matrix::from_i64(q, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(
            envelope_nilpotency(3, std::slice::from_ref(&e12)).unwrap(),
            Nilpotency::Nilpotent(2)
        );
        // Words of length 3 in {e12, e23} vanish; e12·e23 = e13 survives at length 2.
        assert_eq!(
            envelope_nilpotency(3, &[e12.clone(), e23]).unwrap(),
            Nilpotency::Nilpotent(3)
        );
        assert_eq!(
            envelope_nilpotency(3, &[Matrix::identity(q, 3)]).unwrap(),
            Nilpotency::NotNilpotent
        );
        assert!(matches!(
            envelope_nilpotency(2, &[e12]),
            Err(Error::AmbientMismatch(_))
        ));
        assert_eq!(
            envelope_nilpotency(3, &[]).unwrap(),
            Nilpotency::Nilpotent(1)
        );
    }
}
