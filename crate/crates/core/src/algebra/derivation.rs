use super::validate::decode;
use super::NLieSuperalgebra;
use crate::error::{Error, Result};
use crate::linalg::{LinearOperator, Matrix, Subspace};
use crate::parity::Parity;
use crate::scalar::Scalar;

/// Largest power accepted by [`NLieSuperalgebra::derivation_power_membership`].
pub const MAX_DERIVATION_POWER: usize = 12;

/// All `(i₁,…,i_len)` with nonnegative entries summing to `k`.
fn compositions(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl NLieSuperalgebra {
    /// Super-Leibniz test using the operator's own parity.
    pub fn check_derivation(&self, f: &LinearOperator) -> bool {
        self.derivation_defect(f.matrix(), f.parity()).is_none()
    }

    /// True iff `f[x₁,…,xₙ] = Σᵢ (−1)^{δ(p(x₁)+⋯+p(x_{i−1})+α)} [x₁,…,f(xᵢ),…,xₙ]`
    /// on all basis tuples, where `δ` is `degree`.
    ///
    /// For `D(a₁,…,a_{n−1})` the identity holds with `δ = Σ p(aᵢ)`, which
    /// differs from the operator parity `α + Σ p(aᵢ)` when `α` is odd.
    pub fn check_derivation_with_degree(&self, f: &Matrix, degree: Parity) -> bool {
        self.derivation_defect(f, degree).is_none()
    }

    /// First basis tuple on which the super-Leibniz identity fails.
    pub fn derivation_defect(&self, f: &Matrix, degree: Parity) -> Option<Vec<usize>> {
        let d = self.dim();
        let n = self.arity;
        assert!(f.rows() == d && f.cols() == d, "operator dimension");
        let images: Vec<Vec<Scalar>> = f.columns();
        for k in 0..d.pow(n as u32) {
            let x = decode(k, d, n);
            let lhs = f.apply(self.basis_bracket(&x));
            let mut rhs = self.zero_vector();
            let mut prefix = Parity::Even;
            for i in 0..n {
                let sign = self.field.sign((degree * (prefix + self.alpha)).is_odd());
                let mut args: Vec<Vec<Scalar>> = x.iter().map(|&j| self.basis_vector(j)).collect();
                args[i] = images[x[i]].iter().map(|c| c * &sign).collect();
                let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                self.accumulate_bracket(&refs, &mut rhs);
                prefix += self.parity(x[i]);
            }
            if lhs != rhs {
                return Some(x);
            }
        }
        None
    }

    /// Whether `f^k[x₁,…,xₙ]` lies in the span of `[f^{i₁}x₁,…,f^{iₙ}xₙ]`
    /// over all `i₁+⋯+iₙ = k`.
    pub fn derivation_power_membership(
        &self,
        f: &Matrix,
        k: usize,
        args: &[&[Scalar]],
    ) -> Result<bool> {
        if k > MAX_DERIVATION_POWER {
            return Err(Error::HypothesisNotMet(format!(
                "power {k} exceeds {MAX_DERIVATION_POWER}"
            )));
        }
        let d = self.dim();
        if f.rows() != d || f.cols() != d {
            return Err(Error::AmbientMismatch(format!(
                "{}x{} operator on dimension {d}",
                f.rows(),
                f.cols()
            )));
        }
        let lhs = f.pow(k).apply(&self.bracket(args)?);
        // powers[i][s] = f^s(x_i)
        let powers: Vec<Vec<Vec<Scalar>>> = args
            .iter()
            .map(|x| {
                let mut out = vec![x.to_vec()];
                for _ in 0..k {
                    let next = f.apply(out.last().expect("nonempty"));
                    out.push(next);
                }
                out
            })
            .collect();
        let spanning: Vec<Vec<Scalar>> = compositions(k, self.arity)
            .into_iter()
            .map(|exps| {
                let refs: Vec<&[Scalar]> = exps
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| powers[i][e].as_slice())
                    .collect();
                let mut acc = self.zero_vector();
                self.accumulate_bracket(&refs, &mut acc);
                acc
            })
            .collect();
        Ok(Subspace::span(self.field, d, &spanning)?.contains(&lhs))
    }
}
