//! The n-Lie superalgebra value type.
//!
//! Structure constants are stored only for non-decreasing index tuples; every
//! other ordering is recovered through [`canonicalize_tuple`].

mod derivation;
mod validate;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Grading, LinearOperator, Matrix};
use crate::parity::Parity;
use crate::scalar::{Field, Scalar};

pub use derivation::MAX_DERIVATION_POWER;
pub use validate::{ValidationReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, parity: Parity) -> BasisElement {
        BasisElement {
            name: name.into(),
            parity,
        }
    }
}

/// Sorts `indices` by adjacent transpositions and returns the accumulated sign.
///
/// Each swap of neighbours with parities `p`, `q` contributes `-(-1)^{pq}`. The
/// sign is `0` when an even index repeats and the characteristic is not 2.
pub fn canonicalize_tuple(
    indices: &[usize],
    parities: &[Parity],
    char_two: bool,
) -> (Vec<usize>, i8) {
    assert_eq!(indices.len(), parities.len(), "one parity per index");
    let mut items: Vec<(usize, Parity)> = indices
        .iter()
        .copied()
        .zip(parities.iter().copied())
        .collect();
    let mut sign = 1i8;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1].0 > items[j].0 {
            if !(items[j - 1].1.is_odd() && items[j].1.is_odd()) {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    if !char_two
        && items
            .windows(2)
            .any(|w| w[0].0 == w[1].0 && !w[0].1.is_odd())
    {
        sign = 0;
    }
    (items.into_iter().map(|(i, _)| i).collect(), sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    Even,
    Odd,
    Mixed,
}

/// A coordinate vector over an algebra's basis together with its homogeneity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperVector {
    coords: Vec<Scalar>,
    homogeneity: Homogeneity,
}

impl SuperVector {
    /// The zero vector is tagged even.
    pub fn new(coords: Vec<Scalar>, grading: &Grading) -> SuperVector {
        assert_eq!(coords.len(), grading.len(), "vector length");
        let homogeneity = match grading.homogeneous_parity(&coords) {
            Some(Parity::Even) => Homogeneity::Even,
            Some(Parity::Odd) => Homogeneity::Odd,
            None => Homogeneity::Mixed,
        };
        SuperVector {
            coords,
            homogeneity,
        }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn homogeneity(&self) -> Homogeneity {
        self.homogeneity
    }

    pub fn parity(&self) -> Option<Parity> {
        match self.homogeneity {
            Homogeneity::Even => Some(Parity::Even),
            Homogeneity::Odd => Some(Parity::Odd),
            Homogeneity::Mixed => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// Values of the bracket on every ordered basis tuple, indexed in mixed radix.
#[derive(Debug)]
struct DenseTable {
    values: Vec<Vec<Scalar>>,
}

#[derive(Clone)]
pub struct NLieSuperalgebra {
    field: Field,
    arity: usize,
    alpha: Parity,
    basis: Vec<BasisElement>,
    grading: Grading,
    table: BTreeMap<Vec<usize>, Vec<Scalar>>,
    validated: bool,
    dense: OnceLock<Arc<DenseTable>>,
}

impl PartialEq for NLieSuperalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.arity == other.arity
            && self.alpha == other.alpha
            && self.basis == other.basis
            && self.table == other.table
    }
}

impl Eq for NLieSuperalgebra {}

impl fmt::Debug for NLieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NLieSuperalgebra")
            .field("field", &self.field)
            .field("arity", &self.arity)
            .field("alpha", &self.alpha)
            .field("basis", &self.basis)
            .field("table", &self.table)
            .field("validated", &self.validated)
            .finish()
    }
}

impl NLieSuperalgebra {
    /// Builds an algebra from canonical entries.
    ///
    /// Only structural checks happen here (arity, names, tuple order, vector
    /// lengths, fields). The parity rule, skew-symmetry and Filippov–Jacobi are
    /// checked by [`NLieSuperalgebra::validate`]. Zero values are dropped.
    pub fn new(
        field: Field,
        arity: usize,
        alpha: Parity,
        basis: Vec<BasisElement>,
        entries: impl IntoIterator<Item = (Vec<usize>, Vec<Scalar>)>,
    ) -> Result<NLieSuperalgebra> {
        if arity < 2 {
            return Err(Error::InvalidAlgebra(format!("arity {arity} is below 2")));
        }
        let mut seen = HashSet::new();
        for b in &basis {
            if b.name.is_empty() {
                return Err(Error::InvalidAlgebra("empty basis name".into()));
            }
            if !seen.insert(b.name.as_str()) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate basis name {}",
                    b.name
                )));
            }
        }
        let grading = Grading::new(basis.iter().map(|b| b.parity).collect());
        let mut algebra = NLieSuperalgebra {
            field,
            arity,
            alpha,
            basis,
            grading,
            table: BTreeMap::new(),
            validated: false,
            dense: OnceLock::new(),
        };
        for (tuple, value) in entries {
            if algebra.table.contains_key(&tuple) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate entry for {}",
                    algebra.tuple_names(&tuple)
                )));
            }
            algebra.set_entry(tuple, value)?;
        }
        Ok(algebra)
    }

    /// Convenience builder from names and integer coefficients.
    ///
    /// Argument tuples may be given in any order; they are canonicalized with
    /// their sign. A nonzero value on a tuple whose sign vanishes is rejected.
    pub fn from_names(
        field: Field,
        arity: usize,
        alpha: Parity,
        basis: &[(&str, Parity)],
        brackets: &[(&[&str], &[(&str, i64)])],
    ) -> Result<NLieSuperalgebra> {
        let basis: Vec<BasisElement> = basis
            .iter()
            .map(|(n, p)| BasisElement::new(*n, *p))
            .collect();
        let mut algebra = NLieSuperalgebra::new(field, arity, alpha, basis, std::iter::empty())?;
        for (args, value) in brackets {
            let idx = args
                .iter()
                .map(|a| algebra.require_index(a))
                .collect::<Result<Vec<_>>>()?;
            let mut v = algebra.zero_vector();
            for (name, c) in value.iter() {
                let j = algebra.require_index(name)?;
                v[j] = &v[j] + &field.from_i64(*c);
            }
            let (canon, sign) = algebra.canonicalize(&idx);
            if sign == 0 {
                if v.iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} is forced to vanish",
                        algebra.tuple_names(&idx)
                    )));
                }
                continue;
            }
            let s = field.sign(sign < 0);
            let v: Vec<Scalar> = v.iter().map(|x| x * &s).collect();
            algebra.set_entry(canon, v)?;
        }
        Ok(algebra)
    }

    fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::InvalidAlgebra(format!("unknown basis element {name}")))
    }

    /// Replaces one stored entry. The tuple must be non-decreasing.
    pub fn set_entry(&mut self, tuple: Vec<usize>, value: Vec<Scalar>) -> Result<()> {
        let d = self.dim();
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        if tuple.iter().any(|&i| i >= d) {
            return Err(Error::InvalidAlgebra(format!(
                "index out of range in {tuple:?}"
            )));
        }
        if tuple.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidAlgebra(format!(
                "tuple {} is not in basis order",
                self.tuple_names(&tuple)
            )));
        }
        if value.len() != d {
            return Err(Error::AmbientMismatch(format!(
                "value of length {} for dimension {d}",
                value.len()
            )));
        }
        if let Some(x) = value.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        if value.iter().all(Scalar::is_zero) {
            self.table.remove(&tuple);
        } else {
            self.table.insert(tuple, value);
        }
        self.validated = false;
        self.dense = OnceLock::new();
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alpha(&self) -> Parity {
        self.alpha
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.grading.dims()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn tuple_names(&self, tuple: &[usize]) -> String {
        let names: Vec<&str> = tuple
            .iter()
            .map(|&i| self.basis.get(i).map_or("?", |b| b.name.as_str()))
            .collect();
        format!("[{}]", names.join(","))
    }

    /// Stored (canonical, nonzero) entries in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Scalar>)> {
        self.table.iter()
    }

    pub fn entry(&self, tuple: &[usize]) -> Option<&Vec<Scalar>> {
        self.table.get(tuple)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Over characteristic 2 the skew identity imposes no vanishing constraint.
    pub fn char_two_caveat(&self) -> bool {
        self.field.is_char_two()
    }

    pub fn is_abelian(&self) -> bool {
        self.dense()
            .values
            .iter()
            .all(|v| v.iter().all(Scalar::is_zero))
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn vector(&self, coords: Vec<Scalar>) -> Result<SuperVector> {
        self.check_vector(&coords)?;
        Ok(SuperVector::new(coords, &self.grading))
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} for dimension {}",
                v.len(),
                self.dim()
            )));
        }
        if let Some(x) = v.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        Ok(())
    }

    pub fn canonicalize(&self, indices: &[usize]) -> (Vec<usize>, i8) {
        let parities: Vec<Parity> = indices.iter().map(|&i| self.parity(i)).collect();
        canonicalize_tuple(indices, &parities, self.field.is_char_two())
    }

    fn dense(&self) -> &DenseTable {
        self.dense.get_or_init(|| {
            let d = self.dim();
            let total = d.pow(self.arity as u32);
            let mut values = Vec::with_capacity(total);
            let mut idx = vec![0usize; self.arity];
            for _ in 0..total {
                values.push(self.sparse_basis_bracket(&idx));
                for slot in (0..self.arity).rev() {
                    idx[slot] += 1;
                    if idx[slot] < d {
                        break;
                    }
                    idx[slot] = 0;
                }
            }
            Arc::new(DenseTable { values })
        })
    }

    fn sparse_basis_bracket(&self, indices: &[usize]) -> Vec<Scalar> {
        let (canon, sign) = self.canonicalize(indices);
        match (sign, self.table.get(&canon)) {
            (0, _) | (_, None) => self.zero_vector(),
            (1, Some(v)) => v.clone(),
            (_, Some(v)) => v.iter().map(|x| -x).collect(),
        }
    }

    pub(crate) fn flat_index(&self, indices: &[usize]) -> usize {
        indices.iter().fold(0, |acc, &i| acc * self.dim() + i)
    }

    /// `[e_{i₁},…,e_{iₙ}]` for an arbitrary ordered basis tuple.
    pub fn basis_bracket(&self, indices: &[usize]) -> &[Scalar] {
        assert_eq!(indices.len(), self.arity, "bracket arity");
        &self.dense().values[self.flat_index(indices)]
    }

    /// Full multilinear expansion of `[v₁,…,vₙ]`.
    pub fn bracket(&self, args: &[&[Scalar]]) -> Result<Vec<Scalar>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        for a in args {
            self.check_vector(a)?;
        }
        let mut acc = self.zero_vector();
        self.accumulate_bracket(args, &mut acc);
        Ok(acc)
    }

    /// Adds `[v₁,…,vₙ]` into `acc`; inputs are assumed well formed.
    pub(crate) fn accumulate_bracket(&self, args: &[&[Scalar]], acc: &mut [Scalar]) {
        let supports: Vec<Vec<(usize, &Scalar)>> = args
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) {
            return;
        }
        let dense = self.dense();
        let n = self.arity;
        let mut pos = vec![0usize; n];
        let mut idx = vec![0usize; n];
        loop {
            let mut coef = self.field.one();
            for slot in 0..n {
                let (i, c) = supports[slot][pos[slot]];
                idx[slot] = i;
                coef = &coef * c;
            }
            let value = &dense.values[self.flat_index(&idx)];
            for (a, x) in acc.iter_mut().zip(value) {
                if !x.is_zero() {
                    *a = &*a + &(&coef * x);
                }
            }
            let mut slot = n;
            loop {
                if slot == 0 {
                    return;
                }
                slot -= 1;
                pos[slot] += 1;
                if pos[slot] < supports[slot].len() {
                    break;
                }
                pos[slot] = 0;
            }
        }
    }

    pub fn bracket_eval(&self, args: &[SuperVector]) -> Result<SuperVector> {
        let refs: Vec<&[Scalar]> = args.iter().map(SuperVector::coords).collect();
        Ok(SuperVector::new(self.bracket(&refs)?, &self.grading))
    }

    /// Matrix of `x ↦ [a₁,…,a_{n−1},x]` for arbitrary (possibly mixed) arguments.
    pub fn left_mult_matrix(&self, args: &[&[Scalar]]) -> Result<Matrix> {
        if args.len() + 1 != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity - 1,
                got: args.len(),
            });
        }
        for a in args {
            self.check_vector(a)?;
        }
        let d = self.dim();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let e = self.basis_vector(j);
            let mut full: Vec<&[Scalar]> = args.to_vec();
            full.push(&e);
            let mut acc = self.zero_vector();
            self.accumulate_bracket(&full, &mut acc);
            columns.push(acc);
        }
        Ok(Matrix::from_columns(self.field, d, &columns))
    }

    /// `D(a₁,…,a_{n−1})` for basis arguments, read straight from the table.
    pub fn basis_left_mult(&self, args: &[usize]) -> Matrix {
        assert_eq!(args.len() + 1, self.arity, "left multiplication arity");
        let d = self.dim();
        let mut idx = args.to_vec();
        idx.push(0);
        let columns: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                idx[self.arity - 1] = j;
                self.basis_bracket(&idx).to_vec()
            })
            .collect();
        Matrix::from_columns(self.field, d, &columns)
    }

    /// The operator `D(a)` with parity `α + Σ p(aᵢ)`; arguments must be homogeneous.
    pub fn left_mult_operator(&self, args: &[SuperVector]) -> Result<LinearOperator> {
        let mut parity = self.alpha;
        for (slot, a) in args.iter().enumerate() {
            parity += a.parity().ok_or(Error::NotHomogeneous(slot))?;
        }
        let refs: Vec<&[Scalar]> = args.iter().map(SuperVector::coords).collect();
        let m = self.left_mult_matrix(&refs)?;
        LinearOperator::new(m, parity, self.grading.clone())
    }
}

impl fmt::Display for NLieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d0, d1) = self.dims();
        writeln!(
            f,
            "{}-Lie superalgebra over {}, dims ({d0}|{d1}), alpha {}",
            self.arity, self.field, self.alpha
        )?;
        for (tuple, value) in &self.table {
            let terms: Vec<String> = value
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| format!("{x}*{}", self.name(j)))
                .collect();
            writeln!(f, "  {} = {}", self.tuple_names(tuple), terms.join(" + "))?;
        }
        Ok(())
    }
}
