use super::{validate_representation, Representation};
use crate::algebra::{BasisElement, NLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::{GradedSubspace, Matrix};
use crate::scalar::Scalar;

/// `A ⋉ V`: basis of `A` followed by the module basis, with
/// `[x₁,…,x_{n−2},v₁,v₂] = 0` and `[x₁,…,x_{n−1},v] = ρ(x)v`.
///
/// Module names that clash with algebra names get a `'` suffix.
pub fn semidirect_sum(rep: &Representation) -> Result<NLieSuperalgebra> {
    let report = validate_representation(rep);
    if !report.is_valid() {
        return Err(Error::InvalidRepresentation(format!(
            "{:?}",
            report.witnesses.first()
        )));
    }
    let a = rep.algebra();
    let field = a.field();
    let (d, m) = (a.dim(), rep.module_dim());
    let mut basis: Vec<BasisElement> = a.basis().to_vec();
    for e in rep.module() {
        let mut name = e.name.clone();
        while basis.iter().any(|x| x.name == name)
            || rep.module().iter().any(|x| x.name == name && x != e)
        {
            name.push('\'');
        }
        basis.push(BasisElement::new(name, e.parity));
    }
    let mut entries: Vec<(Vec<usize>, Vec<Scalar>)> = a
        .entries()
        .map(|(t, v)| {
            let mut value = v.clone();
            value.extend(std::iter::repeat_n(field.zero(), m));
            (t.clone(), value)
        })
        .collect();
    for (t, op) in rep.entries() {
        for j in 0..m {
            let mut tuple = t.clone();
            tuple.push(d + j);
            let mut value = vec![field.zero(); d];
            value.extend(op.column(j));
            entries.push((tuple, value));
        }
    }
    let mut b = NLieSuperalgebra::new(field, a.arity(), a.alpha(), basis, entries)?;
    let check = b.validate();
    if !check.is_valid() {
        return Err(Error::InvalidRepresentation(format!(
            "semidirect sum fails validation: {:?}",
            check.witnesses.first()
        )));
    }
    Ok(b)
}

/// Basis of `u` ordered by ambient pivot position, with a coordinate map.
struct OrderedBasis<'a> {
    space: &'a GradedSubspace,
    vectors: Vec<Vec<Scalar>>,
    /// `order[k]`: index in `space.basis()` of the k-th ordered vector.
    order: Vec<usize>,
}

impl<'a> OrderedBasis<'a> {
    fn new(space: &'a GradedSubspace) -> OrderedBasis<'a> {
        let graded = space.basis();
        let pivot = |v: &Vec<Scalar>| {
            v.iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis vector")
        };
        let mut order: Vec<usize> = (0..graded.len()).collect();
        order.sort_by_key(|&k| pivot(&graded[k]));
        let vectors = order.iter().map(|&k| graded[k].clone()).collect();
        OrderedBasis {
            space,
            vectors,
            order,
        }
    }

    fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let graded = self.space.coordinates(v)?;
        Some(self.order.iter().map(|&k| graded[k].clone()).collect())
    }

    /// Basis elements named after `b` where a vector is a unit vector.
    fn elements(&self, b: &NLieSuperalgebra, prefix: &str) -> Vec<BasisElement> {
        self.vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let parity = b.grading().homogeneous_parity(v).expect("graded basis");
                let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                let name = match nonzero.as_slice() {
                    [i] if v[*i].is_one() => b.name(*i).to_string(),
                    _ => format!("{prefix}{}", k + 1),
                };
                BasisElement::new(name, parity)
            })
            .collect()
    }
}

/// The representation of the subalgebra `a` on the abelian ideal `v` of
/// `b = a ⊕ v` given by `ρ(x)(w) = [x, w]`.
pub fn representation_from_module(
    b: &NLieSuperalgebra,
    a: &GradedSubspace,
    v: &GradedSubspace,
) -> Result<Representation> {
    if a.grading() != b.grading() || v.grading() != b.grading() {
        return Err(Error::BadDecomposition(
            "subspaces of another ambient".into(),
        ));
    }
    if !b.is_subalgebra(a) {
        return Err(Error::BadDecomposition("A is not a subalgebra".into()));
    }
    if !b.is_abelian_ideal(v) {
        return Err(Error::BadDecomposition("V is not an abelian ideal".into()));
    }
    if !a.intersect(v)?.is_zero() || a.dim() + v.dim() != b.dim() {
        return Err(Error::BadDecomposition(
            "B is not the direct sum of A and V".into(),
        ));
    }
    let field = b.field();
    let n = b.arity();
    let ab = OrderedBasis::new(a);
    let vb = OrderedBasis::new(v);
    let a_basis = ab.elements(b, "a");
    let v_basis = vb.elements(b, "v");

    let mut algebra = NLieSuperalgebra::new(field, n, b.alpha(), a_basis, std::iter::empty())?;
    for t in canonical_tuples(&algebra, n) {
        let args: Vec<&[Scalar]> = t.iter().map(|&i| ab.vectors[i].as_slice()).collect();
        let value = b.bracket(&args).expect("n arguments");
        let coords = ab.coordinates(&value).expect("A is a subalgebra");
        algebra.set_entry(t, coords).expect("canonical tuple");
    }
    algebra.validate();

    let mut entries: Vec<(Vec<usize>, Matrix)> = Vec::new();
    for t in canonical_tuples(&algebra, n - 1) {
        let columns: Vec<Vec<Scalar>> = vb
            .vectors
            .iter()
            .map(|w| {
                let mut args: Vec<&[Scalar]> =
                    t.iter().map(|&i| ab.vectors[i].as_slice()).collect();
                args.push(w);
                let value = b.bracket(&args).expect("n arguments");
                vb.coordinates(&value).expect("V is an ideal")
            })
            .collect();
        let op = Matrix::from_columns(field, vb.vectors.len(), &columns);
        entries.push((t, op));
    }
    Representation::new(algebra, v_basis, entries)
}

/// Non-decreasing `len`-tuples whose canonical sign is nonzero.
fn canonical_tuples(a: &NLieSuperalgebra, len: usize) -> Vec<Vec<usize>> {
    let d = a.dim();
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut tuple = vec![0usize; len];
    loop {
        if a.canonicalize(&tuple).1 != 0 {
            out.push(tuple.clone());
        }
        let Some(slot) = (0..len).rev().find(|&s| tuple[s] + 1 < d) else {
            break;
        };
        let v = tuple[slot] + 1;
        for t in tuple.iter_mut().skip(slot) {
            *t = v;
        }
    }
    out
}
