use rayon::prelude::*;
use serde::Serialize;

use super::Representation;
use crate::linalg::Matrix;
use crate::parity::Parity;
use crate::scalar::Scalar;

/// Witnesses kept per report.
const MAX_WITNESSES: usize = 16;

/// Sign of the `ρ(a)ρ(b)` term in the commutator relation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CommutatorSign {
    /// `(−1)^{p(a)(p(b)+α)}`, as the relation is usually written.
    #[default]
    AsStated,
    /// `(−1)^{p(b)(p(a)+α)}`, the sign obtained by expanding `[b,[a,v]]` in the
    /// semidirect sum. The two agree unless `α` is odd and `p(a) ≠ p(b)`.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum RelationWitness {
    Antisymmetry {
        tuple: Vec<usize>,
        slot: usize,
    },
    Commutator {
        a: Vec<usize>,
        b: Vec<usize>,
        lhs: Matrix,
        rhs: Matrix,
    },
    Bracket {
        a: Vec<usize>,
        b: Vec<usize>,
        lhs: Matrix,
        rhs: Matrix,
    },
    Parity {
        tuple: Vec<usize>,
        row: usize,
        col: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub antisymmetry_ok: bool,
    pub commutator_ok: bool,
    pub bracket_ok: bool,
    pub parity_ok: bool,
    pub witnesses: Vec<RelationWitness>,
}

impl RepresentationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry_ok && self.commutator_ok && self.bracket_ok && self.parity_ok
    }
}

/// Non-decreasing `len`-tuples over `0..d` whose canonical sign is nonzero.
fn canonical_tuples(rep: &Representation, len: usize) -> Vec<Vec<usize>> {
    let d = rep.algebra.dim();
    let mut out = Vec::new();
    if len == 0 {
        return vec![Vec::new()];
    }
    if d == 0 {
        return out;
    }
    let mut tuple = vec![0usize; len];
    loop {
        if len < 2 || rep.algebra.canonicalize(&tuple).1 != 0 {
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

fn parity_sum(rep: &Representation, idx: &[usize]) -> Parity {
    Parity::sum(idx.iter().map(|&i| rep.algebra.parity(i)))
}

fn mul(x: &Matrix, y: &Matrix) -> Matrix {
    x.mul(y).expect("square operators")
}

fn add_into(acc: &mut Matrix, x: &Matrix) {
    *acc = acc.add(x).expect("same shape");
}

/// Checks the four defining relations with the usual commutator sign.
pub fn validate_representation(rep: &Representation) -> RepresentationReport {
    validate_representation_with(rep, CommutatorSign::AsStated)
}

/// Checks on basis tuples: (1) slot antisymmetry, (2) the commutator relation,
/// (3) the bracket relation, (4) `ρ(a)` shifts module parity by `α + Σ p(aᵢ)`.
pub fn validate_representation_with(
    rep: &Representation,
    sign: CommutatorSign,
) -> RepresentationReport {
    let a = &rep.algebra;
    let field = a.field();
    let n = a.arity();
    let d = a.dim();
    let alpha = a.alpha();
    let mut witnesses = Vec::new();

    // (1) over every basis tuple and adjacent swap.
    let mut antisymmetry_ok = true;
    for code in 0..d.pow((n - 1) as u32) {
        let mut t = vec![0usize; n - 1];
        let mut rest = code;
        for s in (0..n - 1).rev() {
            t[s] = rest % d;
            rest /= d;
        }
        let op = rep.basis_operator(&t);
        for slot in 0..n.saturating_sub(2) {
            let mut swapped = t.clone();
            swapped.swap(slot, slot + 1);
            let both_odd = a.parity(t[slot]).is_odd() && a.parity(t[slot + 1]).is_odd();
            let expected = rep.basis_operator(&swapped).scale(&field.sign(!both_odd));
            if op != expected {
                antisymmetry_ok = false;
                witnesses.push(RelationWitness::Antisymmetry {
                    tuple: t.clone(),
                    slot,
                });
            }
        }
    }

    let slots = canonical_tuples(rep, n - 1);

    // (2) ρ(b)ρ(a) = ±ρ(a)ρ(b) + Σᵢ (−1)^{p(b)(p(a₁)+⋯+p(a_{i−1})+α)} ρ(a₁,…,D(b)aᵢ,…).
    let commutator: Vec<RelationWitness> = slots
        .par_iter()
        .flat_map_iter(|ta| {
            let rho_a = rep.basis_operator(ta);
            let pa = parity_sum(rep, ta);
            slots.iter().filter_map(move |tb| {
                let rho_b = rep.basis_operator(tb);
                let pb = parity_sum(rep, tb);
                let lhs = mul(&rho_b, &rho_a);
                let first_odd = match sign {
                    CommutatorSign::AsStated => (pa * (pb + alpha)).is_odd(),
                    CommutatorSign::Derived => (pb * (pa + alpha)).is_odd(),
                };
                let mut rhs = mul(&rho_a, &rho_b).scale(&field.sign(first_odd));
                let b_vecs: Vec<Vec<Scalar>> = tb.iter().map(|&j| a.basis_vector(j)).collect();
                let mut prefix = Parity::Even;
                for i in 0..ta.len() {
                    let mut args: Vec<Vec<Scalar>> = b_vecs.clone();
                    args.push(a.basis_vector(ta[i]));
                    let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                    let image = a.bracket(&refs).expect("n arguments");
                    let mut slot_args: Vec<Vec<Scalar>> =
                        ta.iter().map(|&j| a.basis_vector(j)).collect();
                    slot_args[i] = image;
                    let refs: Vec<&[Scalar]> = slot_args.iter().map(Vec::as_slice).collect();
                    let term = rep.operator(&refs).expect("n-1 arguments");
                    let s = field.sign((pb * (prefix + alpha)).is_odd());
                    add_into(&mut rhs, &term.scale(&s));
                    prefix += a.parity(ta[i]);
                }
                (lhs != rhs).then(|| RelationWitness::Commutator {
                    a: ta.clone(),
                    b: tb.clone(),
                    lhs,
                    rhs,
                })
            })
        })
        .collect();
    let commutator_ok = commutator.is_empty();
    witnesses.extend(commutator);

    // (3) ρ(a, [b₁,…,bₙ]) = Σᵢ λᵢ ρ(b₁,…,b̂ᵢ,…,bₙ) ρ(a, bᵢ).
    let heads = canonical_tuples(rep, n - 2);
    let brackets = canonical_tuples(rep, n);
    let bracket: Vec<RelationWitness> = heads
        .par_iter()
        .flat_map_iter(|ta| {
            let pa = parity_sum(rep, ta);
            brackets.iter().filter_map(move |tb| {
                let mut args: Vec<Vec<Scalar>> = ta.iter().map(|&j| a.basis_vector(j)).collect();
                args.push(a.basis_bracket(tb).to_vec());
                let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                let lhs = rep.operator(&refs).expect("n-1 arguments");
                let m = rep.module_dim();
                let mut rhs = Matrix::zeros(field, m, m);
                for i in 0..n {
                    let others: Vec<usize> = (0..n).filter(|&j| j != i).map(|j| tb[j]).collect();
                    let after = parity_sum(rep, &tb[i + 1..]);
                    let odd = (n - 1 - i) % 2 == 1;
                    let exponent = pa * parity_sum(rep, &others)
                        + (a.parity(tb[i]) + alpha) * after
                        + alpha * pa;
                    let lambda = field.sign(odd ^ exponent.is_odd());
                    let mut inner = ta.clone();
                    inner.push(tb[i]);
                    let term = mul(&rep.basis_operator(&others), &rep.basis_operator(&inner));
                    add_into(&mut rhs, &term.scale(&lambda));
                }
                (lhs != rhs).then(|| RelationWitness::Bracket {
                    a: ta.clone(),
                    b: tb.clone(),
                    lhs,
                    rhs,
                })
            })
        })
        .collect();
    let bracket_ok = bracket.is_empty();
    witnesses.extend(bracket);

    // (4) with the shift α + Σ p(aᵢ).
    let mut parity_ok = true;
    let module = rep.module_grading();
    for (t, op) in rep.entries() {
        let beta = alpha + parity_sum(rep, t);
        for row in 0..op.rows() {
            for col in 0..op.cols() {
                if !op[(row, col)].is_zero() && module.parity(row) != module.parity(col) + beta {
                    parity_ok = false;
                    witnesses.push(RelationWitness::Parity {
                        tuple: t.clone(),
                        row,
                        col,
                    });
                }
            }
        }
    }

    witnesses.truncate(MAX_WITNESSES);
    RepresentationReport {
        antisymmetry_ok,
        commutator_ok,
        bracket_ok,
        parity_ok,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, act3, paper_bc, vector_product};
    use crate::representation::regular_representation;
    use crate::scalar::Field;

    #[test]
    fn regular_representations_are_valid() {
        for f in [Field::Prime(3), Field::Prime(5)] {
            for a in [
                paper_bc(f, 4).unwrap(),
                act3(f).unwrap(),
                vector_product(f, 3).unwrap(),
                abelian(f, 1, 1, 4, Parity::Odd).unwrap(),
            ] {
                let report = validate_representation(&regular_representation(&a));
                assert!(report.is_valid(), "{a}: {:?}", report.witnesses.first());
            }
        }
    }

    fn negate_entry(rho: &Representation, k: usize, row: usize, col: usize) -> Representation {
        let f = rho.algebra().field();
        let mut entries: Vec<(Vec<usize>, Matrix)> =
            rho.entries().map(|(t, m)| (t.clone(), m.clone())).collect();
        let x = entries[k].1[(row, col)].clone();
        entries[k].1.set(row, col, &x * &f.from_i64(-1));
        Representation::new(rho.algebra().clone(), rho.module().to_vec(), entries).unwrap()
    }

    #[test]
    fn negating_the_idempotent_breaks_act3() {
        let a = act3(Field::Prime(3)).unwrap();
        let rho = regular_representation(&a);
        assert_eq!(rho.entries().next().unwrap().0, &vec![0, 1]);
        let report = validate_representation(&negate_entry(&rho, 0, 2, 2));
        assert!(!report.is_valid() && report.parity_ok && report.antisymmetry_ok);
        assert!(matches!(
            report.witnesses.first(),
            Some(RelationWitness::Commutator { .. } | RelationWitness::Bracket { .. })
        ));
    }

    #[test]
    fn negating_bc4_keeps_a_representation() {
        // ρ(b,b,b) is the only nonzero operator and squares to zero, so -ρ
        // satisfies every relation as well.
        let a = paper_bc(Field::Prime(3), 4).unwrap();
        let rho = regular_representation(&a);
        assert!(validate_representation(&negate_entry(&rho, 0, 1, 0)).is_valid());
    }

    #[test]
    fn commutator_signs_agree_on_odd_bracket_algebras() {
        let algebras =
            crate::catalog::brute_force_enumerate(2, 1, 3, 3, Some(Parity::Odd), 1 << 20).unwrap();
        assert!(algebras.iter().any(|e| !e.algebra.is_abelian()));
        for e in &algebras {
            let rho = regular_representation(&e.algebra);
            assert!(validate_representation_with(&rho, CommutatorSign::AsStated).is_valid());
            assert!(validate_representation_with(&rho, CommutatorSign::Derived).is_valid());
        }
    }

    #[test]
    fn wrong_parity_is_caught() {
        let f = Field::Prime(3);
        let a = paper_bc(f, 4).unwrap();
        // ρ(b,b,b) must be odd; an identity operator is even.
        let rho = Representation::new(
            a.clone(),
            a.basis().to_vec(),
            [(vec![0, 0, 0], Matrix::identity(f, 2))],
        )
        .unwrap();
        let report = validate_representation(&rho);
        assert!(!report.parity_ok);
        assert!(matches!(
            report.witnesses.last(),
            Some(RelationWitness::Parity { .. })
        ));
    }

    #[test]
    fn zero_representation_is_valid() {
        let a = vector_product(Field::Prime(3), 3).unwrap();
        let rho = Representation::zero(a.clone(), a.basis().to_vec());
        assert!(validate_representation(&rho).is_valid());
    }
}
