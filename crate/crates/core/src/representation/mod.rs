//! Representations `ρ : A^{n−1} → End V`, their validation, the semidirect
//! sum `A ⋉ V` and the envelope nilpotency check.

mod envelope;
mod module;
mod validate;

use std::collections::BTreeMap;

use crate::algebra::{BasisElement, NLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::{GradedSubspace, Grading, Matrix, Subspace};
use crate::scalar::Scalar;

pub use envelope::{s_star_rho_check, SStarRhoReport};
pub use module::{representation_from_module, semidirect_sum};
pub use validate::{
    validate_representation, validate_representation_with, CommutatorSign, RelationWitness,
    RepresentationReport,
};

/// A multilinear map from `(n−1)`-tuples of `A` to operators on a graded module,
/// stored on canonical (non-decreasing) basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: NLieSuperalgebra,
    module: Vec<BasisElement>,
    grading: Grading,
    table: BTreeMap<Vec<usize>, Matrix>,
}

impl Representation {
    /// Builds a representation from operators on canonical tuples; zero
    /// operators are dropped.
    pub fn new(
        algebra: NLieSuperalgebra,
        module: Vec<BasisElement>,
        entries: impl IntoIterator<Item = (Vec<usize>, Matrix)>,
    ) -> Result<Representation> {
        let grading = Grading::new(module.iter().map(|b| b.parity).collect());
        let mut rep = Representation {
            algebra,
            module,
            grading,
            table: BTreeMap::new(),
        };
        let (slots, d, m) = (rep.algebra.arity() - 1, rep.algebra.dim(), rep.module.len());
        for (tuple, op) in entries {
            if tuple.len() != slots {
                return Err(Error::ArityMismatch {
                    expected: slots,
                    got: tuple.len(),
                });
            }
            if tuple.iter().any(|&i| i >= d) || tuple.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidRepresentation(format!(
                    "tuple {tuple:?} is not canonical"
                )));
            }
            if op.rows() != m || op.cols() != m {
                return Err(Error::InvalidRepresentation(format!(
                    "{}x{} operator on a module of dimension {m}",
                    op.rows(),
                    op.cols()
                )));
            }
            if op.field() != rep.algebra.field() {
                return Err(Error::FieldMismatch(rep.algebra.field(), op.field()));
            }
            if rep.table.contains_key(&tuple) {
                return Err(Error::InvalidRepresentation(format!(
                    "duplicate operator for {tuple:?}"
                )));
            }
            if !op.is_zero() {
                rep.table.insert(tuple, op);
            }
        }
        Ok(rep)
    }

    /// The zero action on a module with the given basis.
    pub fn zero(algebra: NLieSuperalgebra, module: Vec<BasisElement>) -> Representation {
        Representation::new(algebra, module, std::iter::empty()).expect("no entries")
    }

    pub fn algebra(&self) -> &NLieSuperalgebra {
        &self.algebra
    }

    pub fn module(&self) -> &[BasisElement] {
        &self.module
    }

    pub fn module_grading(&self) -> &Grading {
        &self.grading
    }

    pub fn module_dim(&self) -> usize {
        self.module.len()
    }

    pub fn module_dims(&self) -> (usize, usize) {
        self.grading.dims()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Matrix)> {
        self.table.iter()
    }

    /// `ρ(e_{i₁},…,e_{i_{n−1}})` for any order of indices.
    pub fn basis_operator(&self, indices: &[usize]) -> Matrix {
        let m = self.module_dim();
        let field = self.algebra.field();
        let (canon, sign) = self.algebra.canonicalize(indices);
        match (sign, self.table.get(&canon)) {
            (0, _) | (_, None) => Matrix::zeros(field, m, m),
            (s, Some(op)) if s > 0 => op.clone(),
            (_, Some(op)) => op.scale(&field.sign(true)),
        }
    }

    /// `ρ(a₁,…,a_{n−1})` by multilinear expansion.
    pub fn operator(&self, args: &[&[Scalar]]) -> Result<Matrix> {
        let slots = self.algebra.arity() - 1;
        if args.len() != slots {
            return Err(Error::ArityMismatch {
                expected: slots,
                got: args.len(),
            });
        }
        let d = self.algebra.dim();
        if let Some(a) = args.iter().find(|a| a.len() != d) {
            return Err(Error::AmbientMismatch(format!(
                "argument of length {} for dimension {d}",
                a.len()
            )));
        }
        let field = self.algebra.field();
        let m = self.module_dim();
        let mut acc = Matrix::zeros(field, m, m);
        let support: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..d).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if support.iter().any(Vec::is_empty) {
            return Ok(acc);
        }
        let mut pos = vec![0usize; slots];
        loop {
            let idx: Vec<usize> = (0..slots).map(|s| support[s][pos[s]]).collect();
            let coeff = idx
                .iter()
                .enumerate()
                .fold(field.one(), |c, (s, &i)| &c * &args[s][i]);
            let op = self.basis_operator(&idx);
            if !op.is_zero() {
                acc = acc.add(&op.scale(&coeff)).expect("same shape");
            }
            let Some(slot) = (0..slots).rev().find(|&s| pos[s] + 1 < support[s].len()) else {
                return Ok(acc);
            };
            pos[slot] += 1;
            for p in pos.iter_mut().skip(slot + 1) {
                *p = 0;
            }
        }
    }

    /// `ker ρ = {x : ρ(A,…,A,x) = 0}` and whether it vanishes.
    pub fn kernel_and_faithful(&self) -> (GradedSubspace, bool) {
        let a = &self.algebra;
        let (d, m, field) = (a.dim(), self.module_dim(), a.field());
        let lead = a.arity() - 2;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for code in 0..d.pow(lead as u32) {
            let mut idx = vec![0usize; lead + 1];
            let mut rest = code;
            for slot in (0..lead).rev() {
                idx[slot] = rest % d;
                rest /= d;
            }
            // Column i: the flattened ρ(t, e_i).
            let columns: Vec<Vec<Scalar>> = (0..d)
                .map(|i| {
                    idx[lead] = i;
                    self.basis_operator(&idx).flatten()
                })
                .collect();
            for r in 0..m * m {
                rows.push((0..d).map(|i| columns[i][r].clone()).collect());
            }
        }
        let kernel = if rows.is_empty() {
            Subspace::full(field, d)
        } else {
            let system = Matrix::from_rows(field, d, rows).expect("rectangular system");
            Subspace::span(field, d, &system.kernel()).expect("kernel vectors")
        };
        let kernel = GradedSubspace::from_subspace(a.grading(), &kernel)
            .expect("kernel of a graded condition");
        let faithful = kernel.is_zero();
        (kernel, faithful)
    }
}

/// `a ↦ D(a)` on `V = A`.
pub fn regular_representation(a: &NLieSuperalgebra) -> Representation {
    let slots = a.arity() - 1;
    let d = a.dim();
    let mut entries = Vec::new();
    if d > 0 {
        let mut tuple = vec![0usize; slots];
        loop {
            let op = a.basis_left_mult(&tuple);
            if !op.is_zero() {
                entries.push((tuple.clone(), op));
            }
            let Some(slot) = (0..slots).rev().find(|&s| tuple[s] + 1 < d) else {
                break;
            };
            let v = tuple[slot] + 1;
            for t in tuple.iter_mut().skip(slot) {
                *t = v;
            }
        }
    }
    Representation::new(a.clone(), a.basis().to_vec(), entries).expect("canonical tuples")
}
