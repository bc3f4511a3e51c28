use serde::Serialize;

use super::LatticeCatalog;
use crate::linalg::GradedSubspace;
use crate::parity::Parity;
use crate::scalar::Scalar;
use crate::series::subalgebra_nilpotency_class;

/// A proper non-abelian subalgebra failing both S* alternatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SStarViolation {
    pub subalgebra: GradedSubspace,
    /// `dim H/H²`.
    pub quotient_dim: usize,
    pub nilpotent: bool,
    pub one_generated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SStarReport {
    pub holds: bool,
    /// Proper non-abelian subalgebras examined.
    pub checked: usize,
    pub violation: Option<SStarViolation>,
}

impl LatticeCatalog {
    /// Nonzero vectors of a subspace with leading coordinate 1, one per line.
    fn projective_points(&self, basis: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let elements = self
            .field()
            .elements()
            .expect("lattices are over finite fields");
        let q = elements.len();
        let k = basis.len();
        let mut out = Vec::new();
        for code in 0..q.pow(k as u32) {
            let mut coeffs = Vec::with_capacity(k);
            let mut rest = code;
            for _ in 0..k {
                coeffs.push(elements[rest % q].clone());
                rest /= q;
            }
            match coeffs.iter().find(|c| !c.is_zero()) {
                Some(lead) if lead.is_one() => {}
                _ => continue,
            }
            let mut v = self.zero_vector();
            for (c, b) in coeffs.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(c * y);
                }
            }
            out.push(v);
        }
        out
    }

    fn part_basis(&self, h: &GradedSubspace, p: Parity) -> Vec<Vec<Scalar>> {
        h.basis()
            .into_iter()
            .filter(|v| h.grading().homogeneous_parity(v) == Some(p))
            .collect()
    }

    /// Whether `h` is the subalgebra generated by one homogeneous element; with
    /// `allow_mixed`, sums of an even and an odd element are tried afterwards.
    pub fn is_one_generated(&self, h: &GradedSubspace, allow_mixed: bool) -> bool {
        let a = &self.algebra;
        let evens = self.projective_points(&self.part_basis(h, Parity::Even));
        let odds = self.projective_points(&self.part_basis(h, Parity::Odd));
        let generates = |vs: &[Vec<Scalar>]| &a.generated_subalgebra(&a.span(vs)) == h;
        if evens
            .iter()
            .chain(&odds)
            .any(|v| generates(std::slice::from_ref(v)))
        {
            return true;
        }
        // The graded hull of x₀ + x₁ is span{x₀, x₁}.
        allow_mixed
            && evens
                .iter()
                .any(|x0| odds.iter().any(|x1| generates(&[x0.clone(), x1.clone()])))
    }

    /// Every proper non-abelian subalgebra `H` has `dim H/H² ≥ 2`, or is
    /// nilpotent and generated by one element.
    pub fn is_s_star(&self, allow_mixed: bool) -> SStarReport {
        let a = &self.algebra;
        let mut checked = 0;
        for h in self.subalgebras().filter(|h| !h.is_full()) {
            let h2 = a.product_space(&vec![h; a.arity()]);
            if h2.is_zero() {
                continue;
            }
            checked += 1;
            let quotient_dim = h.dim() - h2.dim();
            if quotient_dim >= 2 {
                continue;
            }
            let nilpotent = subalgebra_nilpotency_class(a, h).is_some();
            let one_generated = nilpotent && self.is_one_generated(h, allow_mixed);
            if !(nilpotent && one_generated) {
                let violation = SStarViolation {
                    subalgebra: h.clone(),
                    quotient_dim,
                    nilpotent,
                    one_generated,
                };
                return SStarReport {
                    holds: false,
                    checked,
                    violation: Some(violation),
                };
            }
        }
        SStarReport {
            holds: true,
            checked,
            violation: None,
        }
    }
}
