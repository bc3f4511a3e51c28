use serde::Serialize;

use super::Representation;
use crate::engel::{scan_span_tuples, ScanConfig, ScanStrategy};
use crate::error::{Error, Result};
use crate::linalg::{envelope_nilpotency, matrix_nilpotency, GradedSubspace, Matrix, Nilpotency};
use crate::scalar::Scalar;
use crate::series::subalgebra_nilpotency_class;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SStarRhoReport {
    pub strategy: ScanStrategy,
    /// No tuple from `S` with a non-nilpotent operator was found.
    pub operators_nilpotent: bool,
    pub witness: Option<Vec<Vec<Scalar>>>,
    /// Nilpotency of the associative algebra generated by `ρ(S,…,S)`.
    pub envelope: Nilpotency,
    pub faithful: bool,
    /// For faithful `ρ`: whether `S` is nilpotent and acts nilpotently on `A`.
    pub subalgebra_nilpotent: Option<bool>,
    pub acts_nilpotently: Option<bool>,
    /// The implication holds on this instance.
    pub holds: bool,
}

fn tuples(basis_len: usize, slots: usize) -> Vec<Vec<usize>> {
    (0..basis_len.pow(slots as u32))
        .map(|code| {
            let mut t = vec![0usize; slots];
            let mut rest = code;
            for s in (0..slots).rev() {
                t[s] = rest % basis_len;
                rest /= basis_len;
            }
            t
        })
        .collect()
}

/// For a bracket-closed `S`: if every `ρ(s₁,…,s_{n−1})` with `sᵢ ∈ S` is
/// nilpotent, the operators generate a nilpotent associative algebra; for
/// faithful `ρ`, `S` is moreover nilpotent and acts nilpotently on `A`.
pub fn s_star_rho_check(
    rep: &Representation,
    s: &GradedSubspace,
    cfg: &ScanConfig,
) -> Result<SStarRhoReport> {
    let a = rep.algebra();
    if s.grading() != a.grading() {
        return Err(Error::AmbientMismatch("S lives in another ambient".into()));
    }
    if !a.is_subalgebra(s) {
        return Err(Error::NotHmc);
    }
    let slots = a.arity() - 1;
    let basis = s.basis();
    let scan = scan_span_tuples(a.field(), &basis, a.dim(), slots, cfg, |t| {
        let refs: Vec<&[Scalar]> = t.iter().map(Vec::as_slice).collect();
        !matrix_nilpotency(&rep.operator(&refs).expect("n-1 arguments")).is_nilpotent()
    });
    let operators_nilpotent = scan.failure.is_none();
    // ρ is multilinear, so basis tuples of S span every generator.
    let generators: Vec<Matrix> = tuples(basis.len(), slots)
        .iter()
        .map(|t| {
            let refs: Vec<&[Scalar]> = t.iter().map(|&i| basis[i].as_slice()).collect();
            rep.operator(&refs).expect("n-1 arguments")
        })
        .collect();
    let envelope = envelope_nilpotency(rep.module_dim(), &generators)?;
    let (_, faithful) = rep.kernel_and_faithful();
    let (subalgebra_nilpotent, acts_nilpotently) = if faithful {
        let left: Vec<Matrix> = tuples(basis.len(), slots)
            .iter()
            .map(|t| {
                let refs: Vec<&[Scalar]> = t.iter().map(|&i| basis[i].as_slice()).collect();
                a.left_mult_matrix(&refs).expect("n-1 arguments")
            })
            .collect();
        (
            Some(subalgebra_nilpotency_class(a, s).is_some()),
            Some(envelope_nilpotency(a.dim(), &left)?.is_nilpotent()),
        )
    } else {
        (None, None)
    };
    let conclusion = envelope.is_nilpotent()
        && subalgebra_nilpotent != Some(false)
        && acts_nilpotently != Some(false);
    Ok(SStarRhoReport {
        strategy: scan.strategy,
        operators_nilpotent,
        witness: scan.failure,
        envelope,
        faithful,
        subalgebra_nilpotent,
        acts_nilpotently,
        holds: !operators_nilpotent || conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{act3, paper_bc};
    use crate::representation::regular_representation;
    use crate::scalar::Field;

    #[test]
    fn regular_bc4_with_s_everything() {
        let a = paper_bc(Field::Prime(3), 4).unwrap();
        let r = s_star_rho_check(
            &regular_representation(&a),
            &a.full_space(),
            &ScanConfig::default(),
        )
        .unwrap();
        assert!(r.operators_nilpotent && r.envelope.is_nilpotent() && r.holds);
        assert!(!r.faithful && r.subalgebra_nilpotent.is_none());
    }

    #[test]
    fn zero_s_is_trivially_nilpotent() {
        let a = act3(Field::Prime(3)).unwrap();
        let r = s_star_rho_check(
            &regular_representation(&a),
            &a.zero_space(),
            &ScanConfig::default(),
        )
        .unwrap();
        assert!(r.operators_nilpotent && r.envelope.is_nilpotent() && r.holds);
    }

    #[test]
    fn act3_line_and_whole() {
        let a = act3(Field::Prime(3)).unwrap();
        let rho = regular_representation(&a);
        let y = a.span_names(&["y"]);
        let r = s_star_rho_check(&rho, &y, &ScanConfig::default()).unwrap();
        assert!(r.operators_nilpotent && r.envelope.is_nilpotent() && r.faithful);
        assert_eq!(
            (r.subalgebra_nilpotent, r.acts_nilpotently),
            (Some(true), Some(true))
        );
        let whole = s_star_rho_check(&rho, &a.full_space(), &ScanConfig::default()).unwrap();
        assert!(!whole.operators_nilpotent && whole.holds);
        assert!(
            s_star_rho_check(&rho, &a.span_names(&["x1", "y"]), &ScanConfig::default()).is_ok()
        );
    }

    #[test]
    fn non_closed_s_is_rejected() {
        let a = paper_bc(Field::Prime(3), 4).unwrap();
        let r = s_star_rho_check(
            &regular_representation(&a),
            &a.span_names(&["b"]),
            &ScanConfig::default(),
        );
        assert_eq!(r, Err(Error::NotHmc));
    }
}
