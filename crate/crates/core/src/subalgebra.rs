//! Brackets of subspaces and the subalgebra/ideal predicates built on them.

use crate::algebra::NLieSuperalgebra;
use crate::linalg::{GradedSubspace, Matrix, Subspace};
use crate::scalar::Scalar;

impl NLieSuperalgebra {
    pub fn full_space(&self) -> GradedSubspace {
        GradedSubspace::full(self.field(), self.grading())
    }

    pub fn zero_space(&self) -> GradedSubspace {
        GradedSubspace::zero(self.field(), self.grading())
    }

    /// Graded hull of `vectors`.
    pub fn span(&self, vectors: &[Vec<Scalar>]) -> GradedSubspace {
        GradedSubspace::span(self.field(), self.grading(), vectors)
            .expect("vectors over the algebra's basis")
    }

    /// Span of named basis elements; panics on an unknown name.
    pub fn span_names(&self, names: &[&str]) -> GradedSubspace {
        let vectors: Vec<Vec<Scalar>> = names
            .iter()
            .map(|n| {
                self.basis_vector(
                    self.index_of(n)
                        .unwrap_or_else(|| panic!("unknown basis element {n}")),
                )
            })
            .collect();
        self.span(&vectors)
    }

    /// `[U₁,…,Uₙ]`: the span of brackets of basis vectors drawn from each factor.
    pub fn product_space(&self, factors: &[&GradedSubspace]) -> GradedSubspace {
        assert_eq!(factors.len(), self.arity(), "product arity");
        for u in factors {
            assert_eq!(
                u.grading(),
                self.grading(),
                "factor lives in another ambient"
            );
        }
        if factors.iter().any(|u| u.is_zero()) {
            return self.zero_space();
        }
        let bases: Vec<Vec<Vec<Scalar>>> = factors.iter().map(|u| u.basis()).collect();
        let n = self.arity();
        let mut pos = vec![0usize; n];
        let mut values = Vec::new();
        'outer: loop {
            let args: Vec<&[Scalar]> = (0..n).map(|s| bases[s][pos[s]].as_slice()).collect();
            let mut acc = self.zero_vector();
            self.accumulate_bracket(&args, &mut acc);
            if acc.iter().any(|x| !x.is_zero()) {
                values.push(acc);
            }
            let mut slot = n;
            loop {
                if slot == 0 {
                    break 'outer;
                }
                slot -= 1;
                pos[slot] += 1;
                if pos[slot] < bases[slot].len() {
                    break;
                }
                pos[slot] = 0;
            }
        }
        self.span(&values)
    }

    /// `[A,…,A,U₁,…,U_k]` with `n − k` leading copies of `A`.
    pub fn product_with_full(&self, tail: &[&GradedSubspace]) -> GradedSubspace {
        let full = self.full_space();
        let mut factors: Vec<&GradedSubspace> = vec![&full; self.arity() - tail.len()];
        factors.extend_from_slice(tail);
        self.product_space(&factors)
    }

    /// `A² = [A,…,A]`.
    pub fn derived_algebra(&self) -> GradedSubspace {
        self.product_with_full(&[])
    }

    fn contained(&self, inner: &GradedSubspace, outer: &GradedSubspace) -> bool {
        outer.contains_subspace(inner).expect("same ambient")
    }

    pub fn is_subalgebra(&self, u: &GradedSubspace) -> bool {
        self.contained(&self.product_space(&vec![u; self.arity()]), u)
    }

    /// `[A,…,A,U] ⊆ U`.
    pub fn is_ideal(&self, u: &GradedSubspace) -> bool {
        self.contained(&self.product_with_full(&[u]), u)
    }

    /// `[A,U,…,U] ⊆ U`.
    pub fn is_weak_ideal(&self, u: &GradedSubspace) -> bool {
        let full = self.full_space();
        let mut factors = vec![&full];
        factors.extend(std::iter::repeat_n(u, self.arity() - 1));
        self.contained(&self.product_space(&factors), u)
    }

    /// An ideal with `[A,…,A,U,U] = 0`.
    pub fn is_abelian_ideal(&self, u: &GradedSubspace) -> bool {
        self.is_ideal(u) && self.product_with_full(&[u, u]).is_zero()
    }

    /// `[B,…,B,I] ⊆ I`: `I` is an ideal of the subalgebra `B`.
    pub fn is_ideal_in(&self, b: &GradedSubspace, i: &GradedSubspace) -> bool {
        let mut factors: Vec<&GradedSubspace> = vec![b; self.arity() - 1];
        factors.push(i);
        self.contained(&self.product_space(&factors), i)
    }

    /// Least subalgebra containing `s`.
    pub fn generated_subalgebra(&self, s: &GradedSubspace) -> GradedSubspace {
        let mut t = s.clone();
        loop {
            let next = t
                .sum(&self.product_space(&vec![&t; self.arity()]))
                .expect("same ambient");
            if next == t {
                return t;
            }
            t = next;
        }
    }

    /// Least ideal of `ambient` (a subalgebra) containing `s ⊆ ambient`.
    pub fn normal_closure_in(
        &self,
        ambient: &GradedSubspace,
        s: &GradedSubspace,
    ) -> GradedSubspace {
        let mut t = s.clone();
        loop {
            let mut factors: Vec<&GradedSubspace> = vec![ambient; self.arity() - 1];
            factors.push(&t);
            let next = t.sum(&self.product_space(&factors)).expect("same ambient");
            if next == t {
                return t;
            }
            t = next;
        }
    }

    /// Least ideal of `A` containing `s`.
    pub fn normal_closure(&self, s: &GradedSubspace) -> GradedSubspace {
        self.normal_closure_in(&self.full_space(), s)
    }

    /// `{x ∈ A : [x, M, A,…,A] ⊆ M}`.
    pub fn normalizer(&self, m: &GradedSubspace) -> GradedSubspace {
        let d = self.dim();
        let n = self.arity();
        let field = self.field();
        if m.is_zero() {
            return self.full_space();
        }
        // One block of d rows per (m, a₁,…,a_{n−2}); column i holds the residue of
        // [eᵢ, m, a…] modulo M.
        let m_basis = m.basis();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let tails = d.pow(n as u32 - 2);
        for mv in &m_basis {
            for t in 0..tails {
                let mut rest = vec![0usize; n - 2];
                let mut k = t;
                for slot in (0..n - 2).rev() {
                    rest[slot] = k % d;
                    k /= d;
                }
                let rest_vecs: Vec<Vec<Scalar>> =
                    rest.iter().map(|&j| self.basis_vector(j)).collect();
                let residues: Vec<Vec<Scalar>> = (0..d)
                    .map(|i| {
                        let e = self.basis_vector(i);
                        let mut args: Vec<&[Scalar]> = vec![&e, mv];
                        args.extend(rest_vecs.iter().map(Vec::as_slice));
                        let mut acc = self.zero_vector();
                        self.accumulate_bracket(&args, &mut acc);
                        m.reduce(&acc)
                    })
                    .collect();
                for r in 0..d {
                    rows.push((0..d).map(|i| residues[i][r].clone()).collect());
                }
            }
        }
        let system = Matrix::from_rows(field, d, rows).expect("rectangular system");
        let kernel = Subspace::span(field, d, &system.kernel()).expect("kernel vectors");
        GradedSubspace::from_subspace(self.grading(), &kernel)
            .expect("normalizer of a graded subspace is graded")
    }
}
