//! Exhaustive graded-subspace lattices over finite fields and the constructions
//! that need them: maximal subalgebras, Frattini and Jacobson radicals,
//! subinvariance, invariance numbers and the S* property.

mod chains;
mod radicals;
mod sstar;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::NLieSuperalgebra;
use crate::error::{Error, Result};
use crate::linalg::{GradedSubspace, Grading, Matrix, Subspace};
use crate::scalar::{Field, Scalar};

pub use chains::InvarianceReport;
pub use sstar::{SStarReport, SStarViolation};

/// Default cap on the number of graded subspaces in a lattice.
pub const DEFAULT_LATTICE_BUDGET: u128 = 1_000_000;

/// Number of subspaces of `F_q^k` of each dimension, summed (Gaussian binomials).
pub fn count_subspaces(q: u128, k: usize) -> u128 {
    (0..=k)
        .map(|j| {
            let mut num = 1u128;
            let mut den = 1u128;
            for i in 0..j {
                num = num.saturating_mul(q.saturating_pow((k - i) as u32).saturating_sub(1));
                den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
            }
            num / den
        })
        .fold(0u128, u128::saturating_add)
}

/// Number of graded subspaces of a graded space over `field`; `None` over Q.
pub fn count_graded_subspaces(field: Field, grading: &Grading) -> Option<u128> {
    let q = field.order()? as u128;
    let (d0, d1) = grading.dims();
    Some(count_subspaces(q, d0).saturating_mul(count_subspaces(q, d1)))
}

/// All subspaces of `F_p^k`, each in reduced echelon form.
fn all_subspaces(field: Field, k: usize) -> Vec<Subspace> {
    let elements = field.elements().expect("finite field");
    let mut out = Vec::new();
    for dim in 0..=k {
        for pivots in combinations(k, dim) {
            let free: Vec<(usize, usize)> = (0..dim)
                .flat_map(|r| {
                    ((pivots[r] + 1)..k)
                        .filter(|j| !pivots.contains(j))
                        .map(move |j| (r, j))
                })
                .collect();
            let total = elements.len().pow(free.len() as u32);
            for code in 0..total {
                let mut m = Matrix::zeros(field, dim, k);
                for (r, &c) in pivots.iter().enumerate() {
                    m.set(r, c, field.one());
                }
                let mut rest = code;
                for &(r, j) in free.iter().rev() {
                    m.set(r, j, elements[rest % elements.len()].clone());
                    rest /= elements.len();
                }
                out.push(Subspace::from_matrix(&m));
            }
        }
    }
    out
}

fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, r, &mut Vec::new(), &mut out);
    out
}

/// Every graded subspace exactly once, sorted by canonical form.
pub fn enumerate_graded_subspaces(
    field: Field,
    grading: &Grading,
    budget: u128,
) -> Result<Vec<GradedSubspace>> {
    let needed = count_graded_subspaces(field, grading).ok_or(Error::FiniteFieldRequired)?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let (d0, d1) = grading.dims();
    let evens = all_subspaces(field, d0);
    let odds = all_subspaces(field, d1);
    let mut out: Vec<GradedSubspace> = evens
        .iter()
        .flat_map(|e| {
            odds.iter().map(move |o| {
                GradedSubspace::new(grading.clone(), e.clone(), o.clone()).expect("parts fit")
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubspaceFlags {
    pub subalgebra: bool,
    pub ideal: bool,
    pub weak_ideal: bool,
    pub abelian_ideal: bool,
    pub maximal_subalgebra: bool,
    pub maximal_ideal: bool,
    pub subinvariant: bool,
}

/// The flags that depend on `U` alone; the lattice-relative ones stay false.
pub fn classify_subspace(a: &NLieSuperalgebra, u: &GradedSubspace) -> SubspaceFlags {
    let ideal = a.is_ideal(u);
    SubspaceFlags {
        subalgebra: a.is_subalgebra(u),
        ideal,
        weak_ideal: a.is_weak_ideal(u),
        abelian_ideal: ideal && a.product_with_full(&[u, u]).is_zero(),
        ..SubspaceFlags::default()
    }
}

/// All graded subspaces of an algebra with their structural flags.
#[derive(Clone, Debug)]
pub struct LatticeCatalog {
    algebra: NLieSuperalgebra,
    subspaces: Vec<GradedSubspace>,
    flags: Vec<SubspaceFlags>,
    /// Lattice indices of subalgebras, in lattice order.
    subalgebras: Vec<usize>,
    /// `below[k]`: positions (in `subalgebras`) of subalgebras strictly inside the k-th one.
    below: Vec<Vec<usize>>,
    /// `covers[k]`: the maximal elements of `below[k]`.
    covers: Vec<Vec<usize>>,
    /// Exhaustive chain-search parent of each subinvariant subalgebra.
    chain_parent: Vec<Option<usize>>,
}

impl LatticeCatalog {
    pub fn build(a: &NLieSuperalgebra, budget: u128) -> Result<LatticeCatalog> {
        let subspaces = enumerate_graded_subspaces(a.field(), a.grading(), budget)?;
        let mut flags: Vec<SubspaceFlags> = subspaces
            .par_iter()
            .map(|u| classify_subspace(a, u))
            .collect();
        let subalgebras: Vec<usize> = (0..subspaces.len())
            .filter(|&i| flags[i].subalgebra)
            .collect();
        let below: Vec<Vec<usize>> = subalgebras
            .par_iter()
            .map(|&t| {
                let big = &subspaces[t];
                subalgebras
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| {
                        let small = &subspaces[s];
                        small.dim() < big.dim()
                            && big.contains_subspace(small).expect("same ambient")
                    })
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let covers: Vec<Vec<usize>> = below
            .iter()
            .map(|inside| {
                inside
                    .iter()
                    .copied()
                    .filter(|&s| !inside.iter().any(|&r| below[r].contains(&s)))
                    .collect()
            })
            .collect();
        let mut catalog = LatticeCatalog {
            algebra: a.clone(),
            subspaces,
            flags: Vec::new(),
            subalgebras,
            below,
            covers,
            chain_parent: Vec::new(),
        };
        let top = catalog.top();
        for &k in &catalog.covers[top] {
            flags[catalog.subalgebras[k]].maximal_subalgebra = true;
        }
        let ideals: Vec<usize> = (0..catalog.subspaces.len())
            .filter(|&i| flags[i].ideal && !catalog.subspaces[i].is_full())
            .collect();
        for &i in &ideals {
            let dominated = ideals.iter().any(|&j| {
                catalog.subspaces[j].dim() > catalog.subspaces[i].dim()
                    && catalog.subspaces[j]
                        .contains_subspace(&catalog.subspaces[i])
                        .expect("same ambient")
            });
            flags[i].maximal_ideal = !dominated;
        }
        catalog.chain_parent = catalog.chain_search(top);
        for (k, parent) in catalog.chain_parent.iter().enumerate() {
            if parent.is_some() || k == top {
                flags[catalog.subalgebras[k]].subinvariant = true;
            }
        }
        catalog.flags = flags;
        Ok(catalog)
    }

    pub fn algebra(&self) -> &NLieSuperalgebra {
        &self.algebra
    }

    pub fn subspaces(&self) -> &[GradedSubspace] {
        &self.subspaces
    }

    pub fn flags(&self) -> &[SubspaceFlags] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn index_of(&self, u: &GradedSubspace) -> Option<usize> {
        self.subspaces.binary_search(u).ok()
    }

    pub fn flags_of(&self, u: &GradedSubspace) -> Option<SubspaceFlags> {
        self.index_of(u).map(|i| self.flags[i])
    }

    pub fn subalgebras(&self) -> impl Iterator<Item = &GradedSubspace> + '_ {
        self.subalgebras.iter().map(|&i| &self.subspaces[i])
    }

    pub fn ideals(&self) -> impl Iterator<Item = &GradedSubspace> + '_ {
        (0..self.len())
            .filter(|&i| self.flags[i].ideal)
            .map(|i| &self.subspaces[i])
    }

    fn filtered(&self, pred: impl Fn(&SubspaceFlags) -> bool) -> Vec<&GradedSubspace> {
        (0..self.len())
            .filter(|&i| pred(&self.flags[i]))
            .map(|i| &self.subspaces[i])
            .collect()
    }

    pub fn maximal_subalgebras(&self) -> Vec<&GradedSubspace> {
        self.filtered(|f| f.maximal_subalgebra)
    }

    pub fn maximal_ideals(&self) -> Vec<&GradedSubspace> {
        self.filtered(|f| f.maximal_ideal)
    }

    /// Position of `A` itself in `subalgebras`.
    fn top(&self) -> usize {
        self.subalgebras.len() - 1
    }

    fn position(&self, u: &GradedSubspace) -> Option<usize> {
        let i = self.index_of(u)?;
        self.subalgebras.binary_search(&i).ok()
    }

    fn sub(&self, k: usize) -> &GradedSubspace {
        &self.subspaces[self.subalgebras[k]]
    }

    pub(crate) fn field(&self) -> Field {
        self.algebra.field()
    }

    pub(crate) fn zero_vector(&self) -> Vec<Scalar> {
        self.algebra.zero_vector()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian, act3, paper_bc, vector_product};
    use crate::parity::Parity;

    fn grading(d0: usize, d1: usize) -> Grading {
        let mut ps = vec![Parity::Even; d0];
        ps.extend(vec![Parity::Odd; d1]);
        Grading::new(ps)
    }

    #[test]
    fn small_lattice_counts() {
        let f2 = Field::Prime(2);
        assert_eq!(
            enumerate_graded_subspaces(f2, &grading(1, 1), 100)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            enumerate_graded_subspaces(f2, &grading(2, 0), 100)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            enumerate_graded_subspaces(f2, &grading(0, 0), 100)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_graded_subspaces(Field::Rational, &grading(1, 0), 100),
            Err(Error::FiniteFieldRequired)
        );
        assert!(matches!(
            enumerate_graded_subspaces(Field::Prime(5), &grading(4, 0), 100),
            Err(Error::BudgetExceeded {
                needed: 1120,
                budget: 100
            })
        ));
    }

    #[test]
    fn enumeration_matches_gaussian_counts_and_is_duplicate_free() {
        for (p, d0, d1) in [(2, 3, 1), (3, 2, 2), (5, 2, 1)] {
            let f = Field::Prime(p);
            let g = grading(d0, d1);
            let all = enumerate_graded_subspaces(f, &g, DEFAULT_LATTICE_BUDGET).unwrap();
            assert_eq!(all.len() as u128, count_graded_subspaces(f, &g).unwrap());
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn bc4_flags() {
        let a = paper_bc(Field::Prime(2), 4).unwrap();
        let lat = LatticeCatalog::build(&a, DEFAULT_LATTICE_BUDGET).unwrap();
        let c = lat.flags_of(&a.span_names(&["c"])).unwrap();
        assert!(
            c.ideal && c.abelian_ideal && c.subalgebra && c.maximal_subalgebra && c.maximal_ideal
        );
        let b = lat.flags_of(&a.span_names(&["b"])).unwrap();
        assert!(!b.ideal && !b.weak_ideal && !b.subalgebra);
        let top = lat.flags_of(&a.full_space()).unwrap();
        assert!(top.subalgebra && top.ideal && top.weak_ideal && top.subinvariant);
        assert_eq!(lat.maximal_subalgebras(), vec![&a.span_names(&["c"])]);
    }

    #[test]
    fn abelian_maximal_ideals_are_hyperplanes() {
        let a = abelian(Field::Prime(2), 2, 1, 3, Parity::Even).unwrap();
        let lat = LatticeCatalog::build(&a, DEFAULT_LATTICE_BUDGET).unwrap();
        // Graded hyperplanes: 3 inside the even plane times the odd line, plus the even plane.
        assert_eq!(lat.maximal_ideals().len(), 4);
        assert!(lat.subalgebras().count() == lat.len());
    }

    #[test]
    fn simple_and_solvable_specimens() {
        let v = vector_product(Field::Prime(3), 3).unwrap();
        let lat = LatticeCatalog::build(&v, DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(lat.ideals().count(), 2);
        let g = act3(Field::Prime(3)).unwrap();
        let lat = LatticeCatalog::build(&g, DEFAULT_LATTICE_BUDGET).unwrap();
        let k = lat.flags_of(&g.span_names(&["x1", "x2"])).unwrap();
        assert!(k.subalgebra && k.maximal_subalgebra && !k.ideal);
    }
}
