//! Engel scans over left multiplications, Fitting-0 components and the
//! conditions `*` and `**`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{NLieSuperalgebra, SuperVector};
use crate::error::Result;
use crate::lattice::LatticeCatalog;
use crate::linalg::{matrix_nilpotency, GradedSubspace, Matrix, Subspace};
use crate::scalar::{Field, Scalar};
use crate::series::subalgebra_nilpotency_class;

pub const DEFAULT_TUPLE_BUDGET: u128 = 1_000_000;
pub const DEFAULT_SAMPLES: usize = 10_000;

/// Limits for tuple scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    /// Largest tuple count scanned exhaustively.
    pub budget: u128,
    /// Random tuples drawn when the scan is sampled.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            budget: DEFAULT_TUPLE_BUDGET,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStrategy {
    Exhaustive,
    Sampled,
}

/// Scan result: the first tuple (in scan order) on which `fails` holds.
pub(crate) struct Scan {
    pub strategy: ScanStrategy,
    pub tuple_count: u128,
    pub failure: Option<Vec<Vec<Scalar>>>,
}

/// Coefficient vectors whose first nonzero entry is 1, in lexicographic order.
fn projective_points(field: Field, dim: usize) -> Vec<Vec<Scalar>> {
    let elements = field.elements().expect("finite field");
    let q = elements.len();
    let mut out = Vec::new();
    for code in 0..q.pow(dim as u32) {
        let mut digits = vec![0usize; dim];
        let mut rest = code;
        for slot in (0..dim).rev() {
            digits[slot] = rest % q;
            rest /= q;
        }
        if digits.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(digits.into_iter().map(|i| elements[i].clone()).collect());
        }
    }
    out
}

fn projective_count(field: Field, dim: usize) -> Option<u128> {
    let q = field.order()? as u128;
    Some((q.saturating_pow(dim as u32) - 1) / (q - 1))
}

fn combine(field: Field, coeffs: &[Scalar], basis: &[Vec<Scalar>], len: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(c * y);
            }
        }
    }
    v
}

/// Scans `slots`-tuples of elements of `span(basis)` (vectors of length `len`):
/// all of them up to scaling each slot when the field is finite and the count
/// fits the budget, otherwise basis tuples plus random samples.
pub(crate) fn scan_span_tuples<F>(
    field: Field,
    basis: &[Vec<Scalar>],
    len: usize,
    slots: usize,
    cfg: &ScanConfig,
    fails: F,
) -> Scan
where
    F: Fn(&[Vec<Scalar>]) -> bool + Sync,
{
    let d = basis.len();
    let exhaustive = projective_count(field, d).map(|p| (p, p.saturating_pow(slots as u32)));
    if let Some((points, total)) = exhaustive.filter(|&(_, t)| t <= cfg.budget) {
        let pts: Vec<Vec<Scalar>> = projective_points(field, d)
            .iter()
            .map(|c| combine(field, c, basis, len))
            .collect();
        let points = points as usize;
        let decode = |code: usize| -> Vec<Vec<Scalar>> {
            let mut idx = vec![0usize; slots];
            let mut rest = code;
            for slot in (0..slots).rev() {
                idx[slot] = rest % points;
                rest /= points;
            }
            idx.into_iter().map(|i| pts[i].clone()).collect()
        };
        // Multilinearity: a zero slot gives the zero operator and scaling a
        // slot scales it, so projective representatives cover every tuple.
        let failure = (0..total as usize)
            .into_par_iter()
            .find_first(|&c| fails(&decode(c)))
            .map(decode);
        return Scan {
            strategy: ScanStrategy::Exhaustive,
            tuple_count: total,
            failure,
        };
    }
    let mut tuples: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for code in 0..d.pow(slots as u32) {
        let mut rest = code;
        let mut tuple = vec![Vec::new(); slots];
        for slot in (0..slots).rev() {
            tuple[slot] = basis[rest % d].clone();
            rest /= d;
        }
        tuples.push(tuple);
    }
    if d > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let range = match field.order() {
            Some(q) => 0..q as i64,
            None => -3..4,
        };
        for _ in 0..cfg.samples {
            tuples.push(
                (0..slots)
                    .map(|_| {
                        let coeffs: Vec<Scalar> = (0..d)
                            .map(|_| field.from_i64(rng.gen_range(range.clone())))
                            .collect();
                        combine(field, &coeffs, basis, len)
                    })
                    .collect(),
            );
        }
    }
    let failure = tuples.par_iter().find_first(|t| fails(t)).cloned();
    Scan {
        strategy: ScanStrategy::Sampled,
        tuple_count: tuples.len() as u128,
        failure,
    }
}

fn scan_tuples<F>(a: &NLieSuperalgebra, cfg: &ScanConfig, fails: F) -> Scan
where
    F: Fn(&[Vec<Scalar>]) -> bool + Sync,
{
    let basis: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
    scan_span_tuples(a.field(), &basis, a.dim(), a.arity() - 1, cfg, fails)
}

fn left_mult(a: &NLieSuperalgebra, tuple: &[Vec<Scalar>]) -> Matrix {
    let refs: Vec<&[Scalar]> = tuple.iter().map(Vec::as_slice).collect();
    a.left_mult_matrix(&refs).expect("n-1 arguments")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EngelVerdict {
    /// No non-nilpotent `D(a)` found; `inconclusive` when the scan was sampled.
    AllNilpotent { inconclusive: bool },
    Witness {
        tuple: Vec<Vec<Scalar>>,
        operator: Matrix,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngelReport {
    pub strategy: ScanStrategy,
    pub verdict: EngelVerdict,
    pub tuple_count: u128,
}

impl EngelReport {
    /// True iff a scan found every `D(a)` nilpotent (conclusively or not).
    pub fn all_nilpotent(&self) -> bool {
        matches!(self.verdict, EngelVerdict::AllNilpotent { .. })
    }
}

/// Tests nilpotency of `D(a₁,…,a_{n−1})` over all tuples of elements (finite
/// field within budget) or over basis tuples plus random samples.
pub fn engel_scan(a: &NLieSuperalgebra, cfg: &ScanConfig) -> EngelReport {
    let scan = scan_tuples(a, cfg, |t| {
        !matrix_nilpotency(&left_mult(a, t)).is_nilpotent()
    });
    let verdict = match scan.failure {
        Some(tuple) => {
            let operator = left_mult(a, &tuple);
            EngelVerdict::Witness { tuple, operator }
        }
        None => EngelVerdict::AllNilpotent {
            inconclusive: scan.strategy == ScanStrategy::Sampled,
        },
    };
    EngelReport {
        strategy: scan.strategy,
        verdict,
        tuple_count: scan.tuple_count,
    }
}

fn fitting_zero(a: &NLieSuperalgebra, d: &Matrix) -> Subspace {
    Subspace::span(a.field(), a.dim(), &d.pow(a.dim()).kernel()).expect("kernel vectors")
}

/// `A₀(D(a))`: the vectors killed by some power of `D(a)`, for a homogeneous tuple.
pub fn fitting_zero_component(
    a: &NLieSuperalgebra,
    tuple: &[SuperVector],
) -> Result<GradedSubspace> {
    let op = a.left_mult_operator(tuple)?;
    let zero = fitting_zero(a, op.matrix());
    Ok(GradedSubspace::from_subspace(a.grading(), &zero)
        .expect("kernel of a homogeneous map is graded"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StarStarVerdict {
    Holds,
    Fails {
        tuple: Vec<Vec<Scalar>>,
    },
    /// A sampled scan found no failure.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarStarReport {
    pub strategy: ScanStrategy,
    pub verdict: StarStarVerdict,
    pub tuple_count: u128,
}

/// Condition `**`: every tuple has some `aᵢ ∈ A₀(D(a₁,…,a_{n−1}))`.
pub fn condition_star_star(a: &NLieSuperalgebra, cfg: &ScanConfig) -> StarStarReport {
    let scan = scan_tuples(a, cfg, |t| {
        let zero = fitting_zero(a, &left_mult(a, t));
        !t.iter().any(|x| zero.contains(x))
    });
    let verdict = match (scan.failure, scan.strategy) {
        (Some(tuple), _) => StarStarVerdict::Fails { tuple },
        (None, ScanStrategy::Exhaustive) => StarStarVerdict::Holds,
        (None, ScanStrategy::Sampled) => StarStarVerdict::Unknown,
    };
    StarStarReport {
        strategy: scan.strategy,
        verdict,
        tuple_count: scan.tuple_count,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub holds: bool,
    /// A proper subalgebra `K` with `K + A² = A`.
    pub witness: Option<GradedSubspace>,
}

/// Condition `*`: the only subalgebra `K` with `K + A² = A` is `A`.
pub fn condition_star(lattice: &LatticeCatalog) -> StarReport {
    let a = lattice.algebra();
    let a2 = a.derived_algebra();
    let witness = lattice
        .subalgebras()
        .find(|k| !k.is_full() && k.sum(&a2).expect("same ambient").is_full())
        .cloned();
    StarReport {
        holds: witness.is_none(),
        witness,
    }
}

/// Least-dimensional nonzero nilpotent subalgebra whose normal closure is `A`.
pub fn full_closure_nilpotent_subalgebra(lattice: &LatticeCatalog) -> Option<GradedSubspace> {
    let a = lattice.algebra();
    let mut candidates: Vec<&GradedSubspace> =
        lattice.subalgebras().filter(|n| !n.is_zero()).collect();
    candidates.sort_by_key(|n| n.dim());
    candidates
        .into_iter()
        .find(|n| subalgebra_nilpotency_class(a, n).is_some() && a.normal_closure(n).is_full())
        .cloned()
}
