//! Named algebra families, direct sums and exhaustive enumeration of small algebras.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{canonicalize_tuple, BasisElement, NLieSuperalgebra};
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::scalar::{Field, Scalar};
use crate::series::nilpotency_class;

/// Default cap on the number of structure-constant assignments.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    /// `(1|1)`, basis `b` odd and `c` even, `[b,…,b] = c`; needs even arity.
    PaperBc { n: usize },
    Abelian {
        d0: usize,
        d1: usize,
        n: usize,
        alpha: Parity,
    },
    /// `(2|1)`, ternary, `[x1,x2,y] = y`.
    Act3,
    /// The simple `(n+1)`-dimensional n-Lie algebra, all even.
    VectorProduct { n: usize },
}

impl CatalogName {
    /// Parses a family name with integer parameters, e.g. `("abelian", [1, 1, 3, 0])`.
    pub fn parse(name: &str, params: &[usize]) -> Result<CatalogName> {
        let bad = || Error::UnknownCatalog(format!("{name} with parameters {params:?}"));
        match (name, params) {
            ("paper_bc", [n]) => Ok(CatalogName::PaperBc { n: *n }),
            ("abelian", [d0, d1, n]) => Ok(CatalogName::Abelian {
                d0: *d0,
                d1: *d1,
                n: *n,
                alpha: Parity::Even,
            }),
            ("abelian", [d0, d1, n, a]) if *a < 2 => Ok(CatalogName::Abelian {
                d0: *d0,
                d1: *d1,
                n: *n,
                alpha: Parity::from_bit(*a as u8),
            }),
            ("act3", []) => Ok(CatalogName::Act3),
            ("vector_product", [n]) => Ok(CatalogName::VectorProduct { n: *n }),
            _ => Err(bad()),
        }
    }

    pub fn build(&self, field: Field) -> Result<NLieSuperalgebra> {
        match *self {
            CatalogName::PaperBc { n } => paper_bc(field, n),
            CatalogName::Abelian { d0, d1, n, alpha } => abelian(field, d0, d1, n, alpha),
            CatalogName::Act3 => act3(field),
            CatalogName::VectorProduct { n } => vector_product(field, n),
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::PaperBc { n } => write!(f, "paper_bc({n})"),
            CatalogName::Abelian { d0, d1, n, alpha } => {
                write!(f, "abelian({d0},{d1},{n},{alpha})")
            }
            CatalogName::Act3 => write!(f, "act3"),
            CatalogName::VectorProduct { n } => write!(f, "vector_product({n})"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    /// Accepts `act3`, `paper_bc(4)`, `abelian(1,1,3,0)` and the like.
    fn from_str(s: &str) -> Result<CatalogName> {
        let s = s.trim();
        let (name, params) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownCatalog(s.into()))?;
                let params = inner
                    .split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::UnknownCatalog(s.into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (name, params)
            }
            None => (s, Vec::new()),
        };
        CatalogName::parse(name, &params)
    }
}

fn finish(mut a: NLieSuperalgebra, what: &str) -> Result<NLieSuperalgebra> {
    let report = a.validate();
    if !report.is_valid() {
        return Err(Error::InvalidAlgebra(format!(
            "{what} over {} fails validation",
            a.field()
        )));
    }
    Ok(a)
}

pub fn paper_bc(field: Field, n: usize) -> Result<NLieSuperalgebra> {
    if n < 2 {
        return Err(Error::InvalidAlgebra(format!("arity {n} is below 2")));
    }
    if n % 2 == 1 {
        return Err(Error::ParityObstruction(format!(
            "[b,…,b] with {n} odd arguments is odd and cannot equal the even c"
        )));
    }
    let basis = vec![
        BasisElement::new("b", Parity::Odd),
        BasisElement::new("c", Parity::Even),
    ];
    let a = NLieSuperalgebra::new(
        field,
        n,
        Parity::Even,
        basis,
        vec![(vec![0; n], vec![field.zero(), field.one()])],
    )?;
    finish(a, "paper_bc")
}

fn graded_basis(d0: usize, d1: usize) -> Vec<BasisElement> {
    (1..=d0)
        .map(|i| BasisElement::new(format!("e{i}"), Parity::Even))
        .chain((1..=d1).map(|i| BasisElement::new(format!("o{i}"), Parity::Odd)))
        .collect()
}

pub fn abelian(
    field: Field,
    d0: usize,
    d1: usize,
    n: usize,
    alpha: Parity,
) -> Result<NLieSuperalgebra> {
    finish(
        NLieSuperalgebra::new(field, n, alpha, graded_basis(d0, d1), Vec::new())?,
        "abelian",
    )
}

pub fn act3(field: Field) -> Result<NLieSuperalgebra> {
    let a = NLieSuperalgebra::from_names(
        field,
        3,
        Parity::Even,
        &[
            ("x1", Parity::Even),
            ("x2", Parity::Even),
            ("y", Parity::Odd),
        ],
        &[(&["x1", "x2", "y"], &[("y", 1)])],
    )?;
    finish(a, "act3")
}

/// `[e₁,…,ê_i,…,e_{n+1}] = (−1)^i e_i`.
pub fn vector_product(field: Field, n: usize) -> Result<NLieSuperalgebra> {
    if n < 2 {
        return Err(Error::InvalidAlgebra(format!("arity {n} is below 2")));
    }
    let basis: Vec<BasisElement> = (1..=n + 1)
        .map(|i| BasisElement::new(format!("e{i}"), Parity::Even))
        .collect();
    let entries = (0..=n).map(|omit| {
        let tuple: Vec<usize> = (0..=n).filter(|&j| j != omit).collect();
        let mut value = vec![field.zero(); n + 1];
        value[omit] = field.sign((omit + 1) % 2 == 1);
        (tuple, value)
    });
    finish(
        NLieSuperalgebra::new(field, n, Parity::Even, basis, entries)?,
        "vector_product",
    )
}

/// `A ⊕ B` with vanishing cross brackets; clashing names in `B` get a `'` suffix.
pub fn direct_sum(a: &NLieSuperalgebra, b: &NLieSuperalgebra) -> Result<NLieSuperalgebra> {
    if a.field() != b.field() || a.arity() != b.arity() || a.alpha() != b.alpha() {
        return Err(Error::IncompatibleAlgebras(format!(
            "({}, n={}, alpha={}) and ({}, n={}, alpha={})",
            a.field(),
            a.arity(),
            a.alpha(),
            b.field(),
            b.arity(),
            b.alpha()
        )));
    }
    let mut basis: Vec<BasisElement> = a.basis().to_vec();
    for e in b.basis() {
        let mut name = e.name.clone();
        while basis.iter().any(|x| x.name == name)
            || b.basis().iter().any(|x| x.name == name && x != e)
        {
            name.push('\'');
        }
        basis.push(BasisElement::new(name, e.parity));
    }
    let (da, db) = (a.dim(), b.dim());
    let field = a.field();
    let mut entries: Vec<(Vec<usize>, Vec<Scalar>)> = Vec::new();
    for (t, v) in a.entries() {
        let mut value = v.clone();
        value.extend(std::iter::repeat_n(field.zero(), db));
        entries.push((t.clone(), value));
    }
    for (t, v) in b.entries() {
        let mut value = vec![field.zero(); da];
        value.extend(v.iter().cloned());
        entries.push((t.iter().map(|i| i + da).collect(), value));
    }
    let mut out = NLieSuperalgebra::new(field, a.arity(), a.alpha(), basis, entries)?;
    out.validate();
    Ok(out)
}

/// One free structure constant: coefficient of `target` in the canonical `tuple`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Slot {
    tuple: Vec<usize>,
    target: usize,
}

fn free_slots(basis: &[BasisElement], n: usize, alpha: Parity, char_two: bool) -> Vec<Slot> {
    let d = basis.len();
    let parities: Vec<Parity> = basis.iter().map(|b| b.parity).collect();
    let mut slots = Vec::new();
    if d == 0 {
        return slots;
    }
    let mut tuple = vec![0usize; n];
    loop {
        let ps: Vec<Parity> = tuple.iter().map(|&i| parities[i]).collect();
        if canonicalize_tuple(&tuple, &ps, char_two).1 != 0 {
            let value_parity = alpha + Parity::sum(ps);
            for (target, &p) in parities.iter().enumerate() {
                if p == value_parity {
                    slots.push(Slot {
                        tuple: tuple.clone(),
                        target,
                    });
                }
            }
        }
        let Some(slot) = (0..n).rev().find(|&s| tuple[s] + 1 < d) else {
            break;
        };
        let v = tuple[slot] + 1;
        for t in tuple.iter_mut().skip(slot) {
            *t = v;
        }
    }
    slots
}

/// A valid algebra found by [`brute_force_enumerate`], with its global
/// assignment index (assignments for `α = 0` come before those for `α = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    pub index: u128,
    pub algebra: NLieSuperalgebra,
}

/// Every parity-admissible assignment of structure constants over `F_p` on
/// basis `e1…e_{d0}, o1…o_{d1}` that passes validation, in assignment order.
/// `alpha = None` covers both bracket parities.
pub fn brute_force_enumerate(
    d0: usize,
    d1: usize,
    n: usize,
    p: u32,
    alpha: Option<Parity>,
    budget: u128,
) -> Result<Vec<Enumerated>> {
    let field = Field::prime(p as u64)?;
    if n < 2 {
        return Err(Error::InvalidAlgebra(format!("arity {n} is below 2")));
    }
    let basis = graded_basis(d0, d1);
    let alphas: Vec<Parity> = match alpha {
        Some(a) => vec![a],
        None => vec![Parity::Even, Parity::Odd],
    };
    let plans: Vec<(Parity, Vec<Slot>, u128)> = alphas
        .into_iter()
        .map(|a| {
            let slots = free_slots(&basis, n, a, field.is_char_two());
            let count = (p as u128)
                .checked_pow(slots.len() as u32)
                .unwrap_or(u128::MAX);
            (a, slots, count)
        })
        .collect();
    let needed = plans
        .iter()
        .fold(0u128, |acc, (_, _, c)| acc.saturating_add(*c));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    let mut offset = 0u128;
    for (a, slots, count) in plans {
        let found: Vec<Enumerated> = (0..count)
            .into_par_iter()
            .filter_map(|k| {
                let mut digits = vec![0u32; slots.len()];
                let mut rest = k;
                for digit in digits.iter_mut().rev() {
                    *digit = (rest % p as u128) as u32;
                    rest /= p as u128;
                }
                let mut table: std::collections::BTreeMap<Vec<usize>, Vec<Scalar>> =
                    Default::default();
                for (slot, &digit) in slots.iter().zip(&digits) {
                    if digit != 0 {
                        let v = table
                            .entry(slot.tuple.clone())
                            .or_insert_with(|| vec![field.zero(); basis.len()]);
                        v[slot.target] = field.from_i64(digit as i64);
                    }
                }
                let mut alg = NLieSuperalgebra::new(field, n, a, basis.clone(), table)
                    .expect("canonical slots");
                alg.validate().is_valid().then_some(Enumerated {
                    index: offset + k,
                    algebra: alg,
                })
            })
            .collect();
        out.extend(found);
        offset += count;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedInvariants {
    /// `None` for a non-nilpotent algebra.
    pub class: Option<usize>,
    pub dim_derived: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub algebra: NLieSuperalgebra,
    pub expected: ExpectedInvariants,
}

impl CatalogEntry {
    /// Compares the recorded invariants with freshly computed ones.
    pub fn check(&self) -> Result<()> {
        let computed = ExpectedInvariants {
            class: nilpotency_class(&self.algebra),
            dim_derived: self.algebra.derived_algebra().dim(),
        };
        if computed != self.expected {
            return Err(Error::InvalidAlgebra(format!(
                "{} over {}: expected {:?}, computed {computed:?}",
                self.name,
                self.algebra.field(),
                self.expected
            )));
        }
        Ok(())
    }
}

/// The standard specimens over `field`, with their recorded invariants.
pub fn standard_catalog(field: Field) -> Result<Vec<CatalogEntry>> {
    let specs = [
        (CatalogName::PaperBc { n: 4 }, Some(2), 1),
        (
            CatalogName::Abelian {
                d0: 1,
                d1: 1,
                n: 3,
                alpha: Parity::Even,
            },
            Some(1),
            0,
        ),
        (
            CatalogName::Abelian {
                d0: 1,
                d1: 1,
                n: 4,
                alpha: Parity::Odd,
            },
            Some(1),
            0,
        ),
        (CatalogName::Act3, None, 1),
        (CatalogName::VectorProduct { n: 3 }, None, 4),
    ];
    specs
        .into_iter()
        .map(|(name, class, dim_derived)| {
            let entry = CatalogEntry {
                name,
                algebra: name.build(field)?,
                expected: ExpectedInvariants { class, dim_derived },
            };
            entry.check()?;
            Ok(entry)
        })
        .collect()
}

/// A labeled algebra of the reference corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub algebra: NLieSuperalgebra,
}

/// Catalog specimens over F2, F3 and F5, a direct sum, and both enumeration streams.
pub fn reference_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        let field = Field::Prime(p);
        for entry in standard_catalog(field)? {
            out.push(CorpusEntry {
                label: format!("{} over {field}", entry.name),
                algebra: entry.algebra,
            });
        }
        let sum = direct_sum(
            &paper_bc(field, 4)?,
            &abelian(field, 1, 0, 4, Parity::Even)?,
        )?;
        out.push(CorpusEntry {
            label: format!("paper_bc(4)+abelian(1,0,4) over {field}"),
            algebra: sum,
        });
    }
    for (d0, d1, n, p) in [(1, 1, 4, 2), (1, 1, 3, 3)] {
        for e in brute_force_enumerate(d0, d1, n, p, None, DEFAULT_ENUMERATION_BUDGET)? {
            out.push(CorpusEntry {
                label: format!("enumerated ({d0}|{d1}) n={n} F{p} #{}", e.index),
                algebra: e.algebra,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_validate_and_match_expectations() {
        for p in [2, 3, 5, 7] {
            let entries = standard_catalog(Field::Prime(p)).unwrap();
            assert!(entries.iter().all(|e| e.algebra.is_validated()));
        }
        standard_catalog(Field::Rational).unwrap();
    }

    #[test]
    fn odd_arity_bc_is_a_parity_obstruction() {
        assert!(matches!(
            paper_bc(Field::Prime(3), 3),
            Err(Error::ParityObstruction(_))
        ));
    }

    #[test]
    fn catalog_names_parse() {
        assert_eq!(
            "paper_bc(4)".parse::<CatalogName>().unwrap(),
            CatalogName::PaperBc { n: 4 }
        );
        assert_eq!("act3".parse::<CatalogName>().unwrap(), CatalogName::Act3);
        assert_eq!(
            "abelian(2, 1, 3, 1)".parse::<CatalogName>().unwrap(),
            CatalogName::Abelian {
                d0: 2,
                d1: 1,
                n: 3,
                alpha: Parity::Odd
            }
        );
        assert!("nonsense".parse::<CatalogName>().is_err());
        assert!("abelian(1,1,3,2)".parse::<CatalogName>().is_err());
    }

    #[test]
    fn direct_sums() {
        let f = Field::Prime(3);
        let a = paper_bc(f, 4).unwrap();
        let zero = abelian(f, 0, 0, 4, Parity::Even).unwrap();
        assert_eq!(direct_sum(&a, &zero).unwrap(), a);
        let s = direct_sum(&a, &abelian(f, 1, 0, 4, Parity::Even).unwrap()).unwrap();
        assert!(s.is_validated());
        assert_eq!(nilpotency_class(&s), Some(2));
        let doubled = direct_sum(&a, &a).unwrap();
        assert!(doubled.is_validated());
        assert_eq!(doubled.name(2), "b'");
        assert!(matches!(
            direct_sum(&a, &act3(f).unwrap()),
            Err(Error::IncompatibleAlgebras(_))
        ));
    }

    #[test]
    fn enumeration_streams() {
        let bc = paper_bc(Field::Prime(2), 4).unwrap();
        let stream =
            brute_force_enumerate(1, 1, 4, 2, Some(Parity::Even), DEFAULT_ENUMERATION_BUDGET)
                .unwrap();
        // Enumeration basis is (e1, o1); the specimen's is (b, c) = (o1, e1).
        let swapped = NLieSuperalgebra::new(
            Field::Prime(2),
            4,
            Parity::Even,
            vec![
                BasisElement::new("e1", Parity::Even),
                BasisElement::new("o1", Parity::Odd),
            ],
            vec![(
                vec![1, 1, 1, 1],
                vec![Field::Prime(2).one(), Field::Prime(2).zero()],
            )],
        )
        .unwrap();
        assert_eq!(bc.entries().count(), 1);
        assert!(stream.iter().any(|e| e.algebra == swapped));
        assert!(stream.iter().any(|e| e.algebra.is_abelian()));
        assert!(stream.iter().all(|e| e.algebra.is_validated()));
        let again =
            brute_force_enumerate(1, 1, 4, 2, Some(Parity::Even), DEFAULT_ENUMERATION_BUDGET)
                .unwrap();
        assert_eq!(stream, again);
    }

    #[test]
    fn enumeration_with_no_free_constants_yields_one_algebra() {
        // A single even basis vector: every tuple repeats it.
        let stream = brute_force_enumerate(1, 0, 3, 3, Some(Parity::Even), 10).unwrap();
        assert_eq!(stream.len(), 1);
        assert!(stream[0].algebra.is_abelian());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            brute_force_enumerate(2, 2, 3, 5, None, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn odd_cube_is_rejected_over_f3() {
        let stream =
            brute_force_enumerate(1, 1, 3, 3, Some(Parity::Even), DEFAULT_ENUMERATION_BUDGET)
                .unwrap();
        let o = 1;
        assert!(stream.iter().all(|e| e.algebra.entry(&[o, o, o]).is_none()));
    }
}
