use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::parity::Parity;
use crate::scalar::{Field, Scalar};

/// A subspace of `F^n` stored by its reduced row-echelon basis.
///
/// Two subspaces are equal exactly when their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn span(field: Field, n: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, n, vectors.to_vec())?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    /// Canonical representative of `v` modulo this subspace (zero at every pivot).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if out[pc].is_zero() {
                continue;
            }
            let c = out[pc].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] = &out[j] - &(&c * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "vector length");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Exact intersection: solves `a·U = b·W` through the left kernel of `[U; W]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field(), self.ambient_dim()));
        }
        let stacked = self.basis.vstack(&other.basis)?;
        let k = self.dim();
        let vectors: Vec<Vec<Scalar>> = stacked
            .transpose()
            .kernel()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![self.field().zero(); self.ambient_dim()];
                for (i, c) in coeffs[..k].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, b) in self.basis.row(i).iter().enumerate() {
                        v[j] = &v[j] + &(c * b);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.field(), self.ambient_dim(), &vectors)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(
            other.dim() <= self.dim()
                && (0..other.dim()).all(|i| self.contains(other.basis.row(i))),
        )
    }
}

/// The parity of each basis vector of an ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading(Arc<[Parity]>);

impl Grading {
    pub fn new(parities: Vec<Parity>) -> Grading {
        Grading(parities.into())
    }

    pub fn parities(&self) -> &[Parity] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.0[i]
    }

    /// Basis positions carrying parity `p`, in order.
    pub fn positions(&self, p: Parity) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] == p).collect()
    }

    /// `(d₀, d₁)`.
    pub fn dims(&self) -> (usize, usize) {
        let odd = self.0.iter().filter(|p| p.is_odd()).count();
        (self.len() - odd, odd)
    }

    /// Splits `v` into its even and odd parts, each in restricted coordinates.
    pub fn split(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (x, p) in v.iter().zip(self.0.iter()) {
            match p {
                Parity::Even => even.push(x.clone()),
                Parity::Odd => odd.push(x.clone()),
            }
        }
        (even, odd)
    }

    /// Inverse of [`Grading::split`] for a single parity part.
    pub fn embed(&self, p: Parity, part: &[Scalar], field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.len()];
        for (x, pos) in part.iter().zip(self.positions(p)) {
            out[pos] = x.clone();
        }
        out
    }

    /// Parity of a vector if it is homogeneous; the zero vector counts as even.
    pub fn homogeneous_parity(&self, v: &[Scalar]) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for (x, &p) in v.iter().zip(self.0.iter()) {
            if x.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }
}

/// A graded subspace `I = I₀ ⊕ I₁` of a fixed graded ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedSubspace {
    grading: Grading,
    even: Subspace,
    odd: Subspace,
}

impl GradedSubspace {
    pub fn new(grading: Grading, even: Subspace, odd: Subspace) -> Result<GradedSubspace> {
        let (d0, d1) = grading.dims();
        if even.ambient_dim() != d0 || odd.ambient_dim() != d1 {
            return Err(Error::AmbientMismatch(format!(
                "parts of size ({}|{}) in ambient ({d0}|{d1})",
                even.ambient_dim(),
                odd.ambient_dim()
            )));
        }
        if even.field() != odd.field() {
            return Err(Error::FieldMismatch(even.field(), odd.field()));
        }
        Ok(GradedSubspace { grading, even, odd })
    }

    pub fn zero(field: Field, grading: &Grading) -> GradedSubspace {
        let (d0, d1) = grading.dims();
        GradedSubspace {
            grading: grading.clone(),
            even: Subspace::zero(field, d0),
            odd: Subspace::zero(field, d1),
        }
    }

    pub fn full(field: Field, grading: &Grading) -> GradedSubspace {
        let (d0, d1) = grading.dims();
        GradedSubspace {
            grading: grading.clone(),
            even: Subspace::full(field, d0),
            odd: Subspace::full(field, d1),
        }
    }

    /// Smallest graded subspace containing `vectors`: the span of their
    /// homogeneous components. Equals the plain span when every vector is
    /// homogeneous.
    pub fn span(
        field: Field,
        grading: &Grading,
        vectors: &[Vec<Scalar>],
    ) -> Result<GradedSubspace> {
        let (d0, d1) = grading.dims();
        let mut evens = Vec::with_capacity(vectors.len());
        let mut odds = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != grading.len() {
                return Err(Error::AmbientMismatch(format!(
                    "vector of length {} in ambient of dimension {}",
                    v.len(),
                    grading.len()
                )));
            }
            let (e, o) = grading.split(v);
            evens.push(e);
            odds.push(o);
        }
        Ok(GradedSubspace {
            grading: grading.clone(),
            even: Subspace::span(field, d0, &evens)?,
            odd: Subspace::span(field, d1, &odds)?,
        })
    }

    pub fn field(&self) -> Field {
        self.even.field()
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn even(&self) -> &Subspace {
        &self.even
    }

    pub fn odd(&self) -> &Subspace {
        &self.odd
    }

    pub fn part(&self, p: Parity) -> &Subspace {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even.dim(), self.odd.dim())
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.even.is_full() && self.odd.is_full()
    }

    /// Homogeneous basis in ambient coordinates: even vectors first, then odd.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field();
        let mut out: Vec<Vec<Scalar>> = self
            .even
            .basis_vectors()
            .iter()
            .map(|r| self.grading.embed(Parity::Even, r, f))
            .collect();
        out.extend(
            self.odd
                .basis_vectors()
                .iter()
                .map(|r| self.grading.embed(Parity::Odd, r, f)),
        );
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let (e, o) = self.grading.split(v);
        self.even.contains(&e) && self.odd.contains(&o)
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let (e, o) = self.grading.split(v);
        let (e, o) = (self.even.reduce(&e), self.odd.reduce(&o));
        let f = self.field();
        let mut out = self.grading.embed(Parity::Even, &e, f);
        for (x, pos) in o.iter().zip(self.grading.positions(Parity::Odd)) {
            out[pos] = x.clone();
        }
        out
    }

    fn check_ambient(&self, other: &GradedSubspace) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::AmbientMismatch(format!(
                "graded ambients {:?} and {:?}",
                self.grading.dims(),
                other.grading.dims()
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_ambient(other)?;
        Ok(GradedSubspace {
            grading: self.grading.clone(),
            even: self.even.sum(&other.even)?,
            odd: self.odd.sum(&other.odd)?,
        })
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_ambient(other)?;
        Ok(GradedSubspace {
            grading: self.grading.clone(),
            even: self.even.intersect(&other.even)?,
            odd: self.odd.intersect(&other.odd)?,
        })
    }

    /// `other ⊆ self`.
    pub fn contains_subspace(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.even.contains_subspace(&other.even)? && self.odd.contains_subspace(&other.odd)?)
    }

    pub fn equals(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// Coordinates of `v` relative to [`GradedSubspace::basis`], if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (even, odd) = self.grading.split(v);
        let mut out = self.even.coordinates(&even)?;
        out.extend(self.odd.coordinates(&odd)?);
        Some(out)
    }

    /// Ungraded view in ambient coordinates.
    pub fn to_subspace(&self) -> Subspace {
        Subspace::span(self.field(), self.grading.len(), &self.basis()).expect("ambient vectors")
    }

    /// The graded subspace with the given ungraded view, if that view is graded.
    pub fn from_subspace(grading: &Grading, s: &Subspace) -> Option<GradedSubspace> {
        let g = GradedSubspace::span(s.field(), grading, &s.basis_vectors()).ok()?;
        (g.dim() == s.dim()).then_some(g)
    }
}

impl fmt::Display for GradedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.dims();
        write!(f, "({a}|{b}) span{{")?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

/// Serialized as its dimensions and ambient-coordinate basis.
impl serde::Serialize for GradedSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GradedSubspace", 2)?;
        st.serialize_field("dims", &self.dims())?;
        st.serialize_field("basis", &self.basis())?;
        st.end()
    }
}
