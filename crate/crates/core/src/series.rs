//! Power series, nilpotency class, k-solvability, mixed powers and quotients.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{BasisElement, NLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::GradedSubspace;
use crate::parity::Parity;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `I¹ = I`, `I^{s+1} = [A,…,A,I,I^s]`.
    IdealPower,
    /// `B¹ = B`, `B^{s+1} = [B,…,B,B^s]` for a subalgebra `B`.
    SubalgebraPower,
    /// `I^{(0)} = I`, `I^{(s+1)} = [I^{(s)} (k times), A,…,A]`.
    DerivedK(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVerdict {
    /// The term with this superscript is zero.
    TerminatesAtZero(usize),
    /// The term with this superscript is nonzero and repeats.
    StabilizesNonzero(usize),
    /// No repetition within the iteration cap (only possible for non-ideal input).
    Inconclusive(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// Superscript of `terms[0]`.
    pub first_index: usize,
    pub terms: Vec<GradedSubspace>,
    pub verdict: SeriesVerdict,
    /// False when the series was run on a non-ideal behind the override.
    pub input_is_ideal: bool,
}

impl SeriesReport {
    pub fn terminates(&self) -> bool {
        matches!(self.verdict, SeriesVerdict::TerminatesAtZero(_))
    }

    /// The term with superscript `s`, extending past the computed range by the
    /// verdict (zero after termination, the repeated term after stabilization).
    pub fn term(&self, s: usize) -> Option<&GradedSubspace> {
        let k = s.checked_sub(self.first_index)?;
        Some(
            self.terms
                .get(k)
                .unwrap_or_else(|| self.terms.last().expect("series has a first term")),
        )
    }
}

fn run_series(
    kind: SeriesKind,
    first_index: usize,
    first: GradedSubspace,
    input_is_ideal: bool,
    step: impl Fn(&GradedSubspace) -> GradedSubspace,
) -> SeriesReport {
    let cap = 4 * first.grading().len() + 8;
    let mut terms = vec![first];
    let mut seen: HashSet<GradedSubspace> = terms.iter().cloned().collect();
    let verdict = loop {
        let last = terms.last().expect("nonempty");
        let index = first_index + terms.len() - 1;
        if last.is_zero() {
            break SeriesVerdict::TerminatesAtZero(index);
        }
        if terms.len() > cap {
            break SeriesVerdict::Inconclusive(index);
        }
        let next = step(last);
        if seen.contains(&next) {
            break SeriesVerdict::StabilizesNonzero(index);
        }
        seen.insert(next.clone());
        terms.push(next);
    };
    SeriesReport {
        kind,
        first_index,
        terms,
        verdict,
        input_is_ideal,
    }
}

/// `I¹ = I`, `I^{s+1} = [A,…,A,I,I^s]`. Non-ideals are rejected unless
/// `allow_non_ideal` is set, in which case the report is labeled.
pub fn ideal_power_series(
    a: &NLieSuperalgebra,
    i: &GradedSubspace,
    allow_non_ideal: bool,
) -> Result<SeriesReport> {
    let is_ideal = a.is_ideal(i);
    if !is_ideal && !allow_non_ideal {
        return Err(Error::NotAnIdeal);
    }
    Ok(run_series(
        SeriesKind::IdealPower,
        1,
        i.clone(),
        is_ideal,
        |t| a.product_with_full(&[i, t]),
    ))
}

/// Lower central series `A¹ = A`, `A^{s+1} = [A,…,A,A^s]`.
pub fn lower_central_series(a: &NLieSuperalgebra) -> SeriesReport {
    let full = a.full_space();
    run_series(SeriesKind::IdealPower, 1, full.clone(), true, |t| {
        a.product_with_full(&[&full, t])
    })
}

/// Least `t` with `A^{t+1} = 0`; the zero algebra has class 0.
pub fn nilpotency_class(a: &NLieSuperalgebra) -> Option<usize> {
    match lower_central_series(a).verdict {
        SeriesVerdict::TerminatesAtZero(s) => Some(s - 1),
        _ => None,
    }
}

/// Powers of a subalgebra computed inside it.
pub fn subalgebra_power_series(a: &NLieSuperalgebra, b: &GradedSubspace) -> SeriesReport {
    let factors = a.arity() - 1;
    run_series(
        SeriesKind::SubalgebraPower,
        1,
        b.clone(),
        a.is_ideal(b),
        |t| {
            let mut fs: Vec<&GradedSubspace> = vec![b; factors];
            fs.push(t);
            a.product_space(&fs)
        },
    )
}

/// Nilpotency class of a subalgebra regarded as an algebra in its own right.
pub fn subalgebra_nilpotency_class(a: &NLieSuperalgebra, b: &GradedSubspace) -> Option<usize> {
    match subalgebra_power_series(a, b).verdict {
        SeriesVerdict::TerminatesAtZero(s) => Some(s - 1),
        _ => None,
    }
}

/// Whether `B/C` is nilpotent, for an ideal `C` of the subalgebra `B`:
/// some power `B^k` lies in `C`.
pub fn quotient_is_nilpotent(a: &NLieSuperalgebra, b: &GradedSubspace, c: &GradedSubspace) -> bool {
    let factors = a.arity() - 1;
    let mut t = b.sum(c).expect("same ambient");
    let mut seen = HashSet::new();
    loop {
        if c.contains_subspace(&t).expect("same ambient") {
            return true;
        }
        if !seen.insert(t.clone()) {
            return false;
        }
        let mut fs: Vec<&GradedSubspace> = vec![b; factors];
        fs.push(&t);
        t = a.product_space(&fs).sum(c).expect("same ambient");
    }
}

/// Whether the ideal series of `I` reaches zero.
pub fn ideal_is_nilpotent(a: &NLieSuperalgebra, i: &GradedSubspace) -> bool {
    run_series(SeriesKind::IdealPower, 1, i.clone(), true, |t| {
        a.product_with_full(&[i, t])
    })
    .terminates()
}

/// The k-derived series; the algebra is k-solvable iff it terminates.
pub fn derived_k_series(
    a: &NLieSuperalgebra,
    i: &GradedSubspace,
    k: usize,
) -> Result<SeriesReport> {
    let n = a.arity();
    if k < 2 || k > n {
        return Err(Error::BadArity { k, n });
    }
    let full = a.full_space();
    Ok(run_series(
        SeriesKind::DerivedK(k),
        0,
        i.clone(),
        a.is_ideal(i),
        |t| {
            let mut fs: Vec<&GradedSubspace> = vec![t; k];
            fs.extend(std::iter::repeat_n(&full, n - k));
            a.product_space(&fs)
        },
    ))
}

/// `N^i` from the ideal series of `N` (`i ≥ 1`).
pub fn ideal_power(a: &NLieSuperalgebra, n_ideal: &GradedSubspace, i: usize) -> GradedSubspace {
    assert!(i >= 1, "powers start at 1");
    let series = run_series(SeriesKind::IdealPower, 1, n_ideal.clone(), true, |t| {
        a.product_with_full(&[n_ideal, t])
    });
    series.term(i).expect("i ≥ 1").clone()
}

/// `A^j N^i`, with `A⁰N^i = N^i` and `A^jN^i = [A,…,A,A^{j−1}N^i]`.
pub fn mixed_power(
    a: &NLieSuperalgebra,
    n_ideal: &GradedSubspace,
    j: usize,
    i: usize,
) -> GradedSubspace {
    let mut t = ideal_power(a, n_ideal, i);
    for _ in 0..j {
        if t.is_zero() {
            break;
        }
        t = a.product_with_full(&[&t]);
    }
    t
}

/// Least `m ≥ 1` with `A^{m+1} ⊆ target`, if the lower central series gets there.
fn minimal_power_into(a: &NLieSuperalgebra, target: &GradedSubspace) -> Option<usize> {
    let series = lower_central_series(a);
    let last = series.first_index + series.terms.len() - 1;
    (2..=last + 1)
        .find(|&s| {
            target
                .contains_subspace(series.term(s).expect("s ≥ 1"))
                .expect("same ambient")
        })
        .map(|s| s - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentCase {
    pub r: usize,
    pub u: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub m: usize,
    pub vacuous: bool,
    pub cases: Vec<ContainmentCase>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(|c| c.holds)
    }
}

/// Checks `A^u N^r ⊆ N^{r+1}` with `u = (r−1)(n−1)(m−1) + m`, where `m ≥ 1` is
/// minimal with `A^{m+1} ⊆ N²`, for every `r` up to termination of `N`'s series.
pub fn lemma_containment_check(
    a: &NLieSuperalgebra,
    n_ideal: &GradedSubspace,
) -> Result<LemmaReport> {
    if !a.is_ideal(n_ideal) {
        return Err(Error::NotAnIdeal);
    }
    if n_ideal.is_zero() {
        return Ok(LemmaReport {
            m: 0,
            vacuous: true,
            cases: Vec::new(),
        });
    }
    let n2 = ideal_power(a, n_ideal, 2);
    let m = minimal_power_into(a, &n2)
        .ok_or_else(|| Error::HypothesisNotMet("A/N² is not nilpotent".into()))?;
    let series = ideal_power_series(a, n_ideal, false)?;
    let last = series.first_index + series.terms.len() - 1;
    let n = a.arity();
    let cases = (1..=last)
        .map(|r| {
            let u = (r - 1) * (n - 1) * (m - 1) + m;
            let lhs = mixed_power(a, n_ideal, u, r);
            let rhs = series.term(r + 1).expect("r ≥ 1");
            ContainmentCase {
                r,
                u,
                holds: rhs.contains_subspace(&lhs).expect("same ambient"),
            }
        })
        .collect();
    Ok(LemmaReport {
        m,
        vacuous: false,
        cases,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassBound {
    /// `N = 0`: `t = 0`, bound 0, nothing to check.
    Vacuous,
    /// `N` is not nilpotent or `A/N²` is not nilpotent.
    Inapplicable { reason: String },
    Checked {
        t: usize,
        m: usize,
        bound: usize,
        class: Option<usize>,
        holds: bool,
    },
}

impl ClassBound {
    pub fn holds(&self) -> bool {
        !matches!(self, ClassBound::Checked { holds: false, .. })
    }
}

/// Compares `cl(A)` with `tm + ½t(t−1)(m−1)(n−1)` where `N^{t+1} = 0` and
/// `A^{m+1} ⊆ N²` minimally. A non-nilpotent `A` under both hypotheses fails.
pub fn class_bound_check(a: &NLieSuperalgebra, n_ideal: &GradedSubspace) -> Result<ClassBound> {
    if !a.is_ideal(n_ideal) {
        return Err(Error::NotAnIdeal);
    }
    if n_ideal.is_zero() {
        return Ok(ClassBound::Vacuous);
    }
    let series = ideal_power_series(a, n_ideal, false)?;
    let SeriesVerdict::TerminatesAtZero(s) = series.verdict else {
        return Ok(ClassBound::Inapplicable {
            reason: "N is not nilpotent".into(),
        });
    };
    let t = s - 1;
    let n2 = series.term(2).expect("2 ≥ 1").clone();
    let Some(m) = minimal_power_into(a, &n2) else {
        return Ok(ClassBound::Inapplicable {
            reason: "A/N² is not nilpotent".into(),
        });
    };
    let n = a.arity();
    let bound = t * m + t * (t.saturating_sub(1)) * (m - 1) * (n - 1) / 2;
    let class = nilpotency_class(a);
    let holds = class.is_some_and(|c| c <= bound);
    Ok(ClassBound::Checked {
        t,
        m,
        bound,
        class,
        holds,
    })
}

/// `A/I` on the basis elements whose coordinates are not pivots of `I`.
pub fn quotient_algebra(a: &NLieSuperalgebra, i: &GradedSubspace) -> Result<NLieSuperalgebra> {
    if !a.is_ideal(i) {
        return Err(Error::NotAnIdeal);
    }
    let grading = a.grading();
    let mut pivot = vec![false; a.dim()];
    for p in [Parity::Even, Parity::Odd] {
        let positions = grading.positions(p);
        for &c in i.part(p).pivots() {
            pivot[positions[c]] = true;
        }
    }
    let keep: Vec<usize> = (0..a.dim()).filter(|&j| !pivot[j]).collect();
    let basis: Vec<BasisElement> = keep.iter().map(|&j| a.basis()[j].clone()).collect();
    let q = keep.len();
    let n = a.arity();
    let mut entries = Vec::new();
    if q > 0 {
        let mut tuple = vec![0usize; n];
        loop {
            let original: Vec<usize> = tuple.iter().map(|&k| keep[k]).collect();
            let residue = i.reduce(a.basis_bracket(&original));
            let value: Vec<Scalar> = keep.iter().map(|&j| residue[j].clone()).collect();
            if value.iter().any(|x| !x.is_zero()) {
                entries.push((tuple.clone(), value));
            }
            // next non-decreasing tuple
            let Some(slot) = (0..n).rev().find(|&s| tuple[s] + 1 < q) else {
                break;
            };
            let v = tuple[slot] + 1;
            for t in tuple.iter_mut().skip(slot) {
                *t = v;
            }
        }
    }
    let mut out = NLieSuperalgebra::new(a.field(), n, a.alpha(), basis, entries)?;
    out.validate();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn bc4(f: Field) -> NLieSuperalgebra {
        NLieSuperalgebra::from_names(
            f,
            4,
            Parity::Even,
            &[("b", Parity::Odd), ("c", Parity::Even)],
            &[(&["b", "b", "b", "b"], &[("c", 1)])],
        )
        .unwrap()
    }

    fn act3(f: Field) -> NLieSuperalgebra {
        NLieSuperalgebra::from_names(
            f,
            3,
            Parity::Even,
            &[
                ("x1", Parity::Even),
                ("x2", Parity::Even),
                ("y", Parity::Odd),
            ],
            &[(&["x1", "x2", "y"], &[("y", 1)])],
        )
        .unwrap()
    }

    #[test]
    fn bc4_lower_central_series() {
        let a = bc4(Field::Prime(5));
        let s = ideal_power_series(&a, &a.full_space(), false).unwrap();
        assert_eq!(s.verdict, SeriesVerdict::TerminatesAtZero(3));
        assert_eq!(
            s.terms,
            vec![a.full_space(), a.span_names(&["c"]), a.zero_space()]
        );
        assert_eq!(nilpotency_class(&a), Some(2));
        let z = ideal_power_series(&a, &a.zero_space(), false).unwrap();
        assert_eq!(z.verdict, SeriesVerdict::TerminatesAtZero(1));
        assert_eq!(
            ideal_power_series(&a, &a.span_names(&["b"]), false),
            Err(Error::NotAnIdeal)
        );
        assert!(
            !ideal_power_series(&a, &a.span_names(&["b"]), true)
                .unwrap()
                .input_is_ideal
        );
    }

    #[test]
    fn act3_series_stabilizes() {
        let a = act3(Field::Prime(3));
        let s = lower_central_series(&a);
        assert_eq!(s.verdict, SeriesVerdict::StabilizesNonzero(2));
        assert_eq!(s.terms[1], a.span_names(&["y"]));
        assert_eq!(nilpotency_class(&a), None);
        // A^{(1)} = span{y}; [y, y, A] = 0 because the only bracket needs x1 and x2.
        let d = derived_k_series(&a, &a.full_space(), 2).unwrap();
        assert_eq!(d.verdict, SeriesVerdict::TerminatesAtZero(2));
        assert_eq!(
            derived_k_series(&a, &a.full_space(), 4),
            Err(Error::BadArity { k: 4, n: 3 })
        );
    }

    #[test]
    fn abelian_class_and_solvability() {
        let f = Field::Prime(3);
        let a = NLieSuperalgebra::from_names(
            f,
            3,
            Parity::Odd,
            &[("e", Parity::Even), ("o", Parity::Odd)],
            &[],
        )
        .unwrap();
        assert_eq!(nilpotency_class(&a), Some(1));
        let d = derived_k_series(&a, &a.full_space(), 3).unwrap();
        assert_eq!(d.verdict, SeriesVerdict::TerminatesAtZero(1));
        let zero = NLieSuperalgebra::from_names(f, 3, Parity::Even, &[], &[]).unwrap();
        assert_eq!(nilpotency_class(&zero), Some(0));
    }

    #[test]
    fn mixed_powers_and_lemma() {
        let a = bc4(Field::Prime(3));
        let c = a.span_names(&["c"]);
        assert!(mixed_power(&a, &c, 1, 1).is_zero());
        assert_eq!(mixed_power(&a, &c, 0, 1), c);
        let full = a.full_space();
        assert_eq!(mixed_power(&a, &full, 1, 1), a.span_names(&["c"]));
        let report = lemma_containment_check(&a, &c).unwrap();
        assert_eq!(report.m, 2);
        assert!(report.holds());
        assert_eq!(
            report.cases[0],
            ContainmentCase {
                r: 1,
                u: 2,
                holds: true
            }
        );
        assert!(
            lemma_containment_check(&a, &a.zero_space())
                .unwrap()
                .vacuous
        );
        assert!(lemma_containment_check(&a, &full).unwrap().holds());
    }

    #[test]
    fn class_bounds() {
        let a = bc4(Field::Prime(3));
        assert_eq!(
            class_bound_check(&a, &a.span_names(&["c"])).unwrap(),
            ClassBound::Checked {
                t: 1,
                m: 2,
                bound: 2,
                class: Some(2),
                holds: true
            }
        );
        assert_eq!(
            class_bound_check(&a, &a.full_space()).unwrap(),
            ClassBound::Checked {
                t: 2,
                m: 1,
                bound: 2,
                class: Some(2),
                holds: true
            }
        );
        assert_eq!(
            class_bound_check(&a, &a.zero_space()).unwrap(),
            ClassBound::Vacuous
        );
        let g = act3(Field::Prime(3));
        assert!(matches!(
            class_bound_check(&g, &g.full_space()).unwrap(),
            ClassBound::Inapplicable { .. }
        ));
    }

    #[test]
    fn quotients() {
        let a = bc4(Field::Prime(3));
        let q = quotient_algebra(&a, &a.span_names(&["c"])).unwrap();
        assert_eq!(q.dims(), (0, 1));
        assert!(q.is_abelian() && q.is_validated());
        assert_eq!(quotient_algebra(&a, &a.full_space()).unwrap().dim(), 0);
        let same = quotient_algebra(&a, &a.zero_space()).unwrap();
        assert_eq!(same, a);
        assert_eq!(
            quotient_algebra(&a, &a.span_names(&["b"])),
            Err(Error::NotAnIdeal)
        );
    }

    #[test]
    fn quotient_nilpotency() {
        let g = act3(Field::Prime(3));
        let y = g.span_names(&["y"]);
        let full = g.full_space();
        assert!(quotient_is_nilpotent(&g, &full, &y));
        assert!(!quotient_is_nilpotent(&g, &full, &g.zero_space()));
        assert!(ideal_is_nilpotent(&g, &g.zero_space()));
        // [A, y, y] = 0, so span{y} is a nilpotent ideal although A is not nilpotent.
        assert!(ideal_is_nilpotent(&g, &y));
        assert_eq!(
            subalgebra_nilpotency_class(&g, &g.span_names(&["x1", "x2"])),
            Some(1)
        );
    }
}
