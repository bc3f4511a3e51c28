//! Executable forms of the structure theorems, evaluated on one algebra.
//!
//! Each record states whether the hypothesis holds and, when it does, whether
//! the conclusion does. Quantified statements count their instances.

use serde::Serialize;

use crate::algebra::NLieSuperalgebra;
use crate::engel::{condition_star, condition_star_star, engel_scan, ScanConfig, StarStarVerdict};
use crate::lattice::{LatticeCatalog, DEFAULT_LATTICE_BUDGET};
use crate::linalg::GradedSubspace;
use crate::series::{
    class_bound_check, derived_k_series, lemma_containment_check, nilpotency_class,
    quotient_is_nilpotent, subalgebra_nilpotency_class, ClassBound,
};

/// Witnesses kept per record.
const MAX_WITNESSES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Satisfied,
    NotSatisfied,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRecord {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: Hypothesis,
    pub conclusion: Conclusion,
    /// Instances meeting the hypothesis (1 for unquantified statements).
    pub instances: usize,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConformanceReport {
    pub records: Vec<TheoremRecord>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremRecord> + '_ {
        self.records
            .iter()
            .filter(|r| r.conclusion == Conclusion::Fail)
    }

    pub fn record(&self, id: &str) -> Option<&TheoremRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConformanceConfig {
    pub scan: ScanConfig,
    pub lattice_budget: u128,
    pub allow_mixed_generators: bool,
}

impl Default for ConformanceConfig {
    fn default() -> Self {
        ConformanceConfig {
            scan: ScanConfig::default(),
            lattice_budget: DEFAULT_LATTICE_BUDGET,
            allow_mixed_generators: false,
        }
    }
}

fn single(
    id: &'static str,
    statement: &'static str,
    hypothesis: Hypothesis,
    conclusion: impl FnOnce() -> (bool, Vec<String>),
) -> TheoremRecord {
    let (conclusion, witnesses, instances) = match hypothesis {
        Hypothesis::Satisfied => {
            let (ok, w) = conclusion();
            (
                if ok {
                    Conclusion::Pass
                } else {
                    Conclusion::Fail
                },
                w,
                1,
            )
        }
        _ => (Conclusion::NotApplicable, Vec::new(), 0),
    };
    TheoremRecord {
        id,
        statement,
        hypothesis,
        conclusion,
        instances,
        witnesses,
    }
}

/// Accumulates a statement quantified over lattice instances.
struct Quantified {
    instances: usize,
    failures: Vec<String>,
}

impl Quantified {
    fn new() -> Quantified {
        Quantified {
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness());
        }
    }

    fn finish(self, id: &'static str, statement: &'static str) -> TheoremRecord {
        let (hypothesis, conclusion) = match (self.instances, self.failures.is_empty()) {
            (0, _) => (Hypothesis::NotSatisfied, Conclusion::NotApplicable),
            (_, true) => (Hypothesis::Satisfied, Conclusion::Pass),
            (_, false) => (Hypothesis::Satisfied, Conclusion::Fail),
        };
        TheoremRecord {
            id,
            statement,
            hypothesis,
            conclusion,
            instances: self.instances,
            witnesses: self.failures,
        }
    }
}

fn lattice_unavailable(id: &'static str, statement: &'static str, reason: &str) -> TheoremRecord {
    TheoremRecord {
        id,
        statement,
        hypothesis: Hypothesis::Unknown,
        conclusion: Conclusion::NotApplicable,
        instances: 0,
        witnesses: vec![format!("lattice unavailable: {reason}")],
    }
}

fn hyp(b: bool) -> Hypothesis {
    if b {
        Hypothesis::Satisfied
    } else {
        Hypothesis::NotSatisfied
    }
}

fn le(small: &GradedSubspace, big: &GradedSubspace) -> bool {
    big.contains_subspace(small).expect("same ambient")
}

const LATTICE_STATEMENTS: &[(&str, &str)] = &[
    (
        "maximal_weak_ideals",
        "** and every maximal subalgebra a weak ideal => A nilpotent",
    ),
    (
        "nilpotent_maximal_ideals",
        "A nilpotent => every maximal subalgebra is an ideal",
    ),
    ("radicals_in_derived", "F(A) and J(A) lie in A^2"),
    (
        "nilpotent_radicals",
        "A nilpotent => F(A) = A^2 = phi(A) = J(A)",
    ),
    ("solvable_jacobson", "A k-solvable for some k => J(A) = A^2"),
    (
        "frattini_supplement",
        "B + F(A) = A or B + phi(A) = A => B = A",
    ),
    (
        "frattini_ideals_nilpotent",
        "every ideal inside F(A) is nilpotent",
    ),
    ("conditions_imply_nilpotent", "** and * => A nilpotent"),
    ("nilpotent_condition_star", "A nilpotent => *"),
    (
        "equal_invariance_implies_nilpotent",
        "** and v(A) = v(U) for all proper U => A nilpotent",
    ),
    (
        "nilpotent_equal_invariance",
        "A nilpotent => v(A) = v(U) for all proper U",
    ),
    ("invariance_lemma", "V maximal, not an ideal => v(A) > v(V)"),
    (
        "subinvariant_quotient",
        "U subinvariant, K ideal of U, K in F(A), U/K nilpotent => U nilpotent",
    ),
    (
        "ideal_quotient",
        "B ideal, C ideal of B, C in B and F(A), B/C nilpotent => B nilpotent",
    ),
    ("s_star", "A is S* <=> A nilpotent"),
    (
        "full_closure_generator",
        "A nonzero with ** => some nonzero nilpotent N has N^A = A",
    ),
    (
        "full_closure_generator_is_a",
        "A nilpotent <=> A is the only nilpotent N with N^A = A",
    ),
    (
        "class_bound",
        "N^{t+1} = 0 and (A/N^2)^{m+1} = 0 => cl(A) <= tm + t(t-1)(m-1)(n-1)/2",
    ),
    (
        "mixed_power_containment",
        "A/N^2 nilpotent => A^u N^r in N^{r+1}",
    ),
];

fn statement(id: &str) -> &'static str {
    LATTICE_STATEMENTS
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, s)| *s)
        .expect("known id")
}

/// Evaluates every theorem on `a`; lattice-dependent items need a finite field
/// and a lattice within budget.
pub fn theorem_conformance(a: &NLieSuperalgebra, cfg: &ConformanceConfig) -> ConformanceReport {
    let nilpotent = nilpotency_class(a).is_some();
    let engel = engel_scan(a, &cfg.scan);
    let star_star = condition_star_star(a, &cfg.scan);
    let ss_hyp = match star_star.verdict {
        StarStarVerdict::Holds => Hypothesis::Satisfied,
        StarStarVerdict::Fails { .. } => Hypothesis::NotSatisfied,
        StarStarVerdict::Unknown => Hypothesis::Unknown,
    };
    let engel_hyp = match (engel.all_nilpotent(), engel.strategy) {
        (false, _) => Hypothesis::NotSatisfied,
        (true, crate::engel::ScanStrategy::Exhaustive) => Hypothesis::Satisfied,
        (true, crate::engel::ScanStrategy::Sampled) => Hypothesis::Unknown,
    };
    let mut records = vec![
        single(
            "engel",
            "every D(a) nilpotent => A nilpotent",
            engel_hyp,
            || (nilpotent, Vec::new()),
        ),
        single(
            "engel_converse",
            "A nilpotent => every D(a) nilpotent",
            hyp(nilpotent),
            || {
                let w = match &engel.verdict {
                    crate::engel::EngelVerdict::Witness { tuple, .. } => vec![format!("{tuple:?}")],
                    _ => Vec::new(),
                };
                (engel.all_nilpotent(), w)
            },
        ),
    ];
    match LatticeCatalog::build(a, cfg.lattice_budget) {
        Ok(lattice) => records.extend(lattice_records(&lattice, nilpotent, ss_hyp, cfg)),
        Err(e) => {
            let reason = e.to_string();
            records.extend(
                LATTICE_STATEMENTS
                    .iter()
                    .map(|(id, s)| lattice_unavailable(id, s, &reason)),
            );
        }
    }
    ConformanceReport { records }
}

fn lattice_records(
    lattice: &LatticeCatalog,
    nilpotent: bool,
    ss_hyp: Hypothesis,
    cfg: &ConformanceConfig,
) -> Vec<TheoremRecord> {
    let a = lattice.algebra();
    let full = a.full_space();
    let a2 = a.derived_algebra();
    let frattini = lattice.frattini();
    let phi = lattice.phi();
    let jacobson = lattice.jacobson();
    let maximal = lattice.maximal_subalgebras();
    let both = |h: Hypothesis| match (ss_hyp, h) {
        (Hypothesis::Satisfied, Hypothesis::Satisfied) => Hypothesis::Satisfied,
        (Hypothesis::NotSatisfied, _) | (_, Hypothesis::NotSatisfied) => Hypothesis::NotSatisfied,
        _ => Hypothesis::Unknown,
    };
    let mut out = Vec::new();

    let all_weak = maximal.iter().all(|m| a.is_weak_ideal(m));
    out.push(single(
        "maximal_weak_ideals",
        statement("maximal_weak_ideals"),
        both(hyp(all_weak)),
        || (nilpotent, Vec::new()),
    ));
    out.push(single(
        "nilpotent_maximal_ideals",
        statement("nilpotent_maximal_ideals"),
        hyp(nilpotent),
        || {
            let bad: Vec<String> = maximal
                .iter()
                .filter(|m| !a.is_ideal(m))
                .map(|m| m.to_string())
                .collect();
            (bad.is_empty(), bad)
        },
    ));

    out.push(single(
        "radicals_in_derived",
        statement("radicals_in_derived"),
        Hypothesis::Satisfied,
        || {
            let mut w = Vec::new();
            if !le(&frattini, &a2) {
                w.push(format!("F(A) = {frattini}"));
            }
            if !le(&jacobson, &a2) {
                w.push(format!("J(A) = {jacobson}"));
            }
            (w.is_empty(), w)
        },
    ));
    out.push(single(
        "nilpotent_radicals",
        statement("nilpotent_radicals"),
        hyp(nilpotent),
        || {
            let ok = frattini == a2 && phi == a2 && jacobson == a2;
            let w = if ok {
                Vec::new()
            } else {
                vec![format!(
                    "F = {frattini}, A^2 = {a2}, phi = {phi}, J = {jacobson}"
                )]
            };
            (ok, w)
        },
    ));
    let solvable =
        (2..=a.arity()).any(|k| derived_k_series(a, &full, k).is_ok_and(|s| s.terminates()));
    out.push(single(
        "solvable_jacobson",
        statement("solvable_jacobson"),
        hyp(solvable),
        || {
            let ok = jacobson == a2;
            (
                ok,
                if ok {
                    Vec::new()
                } else {
                    vec![format!("J = {jacobson}, A^2 = {a2}")]
                },
            )
        },
    ));

    let mut supplement = Quantified::new();
    for b in lattice.subalgebras() {
        for r in [&frattini, &phi] {
            if b.sum(r).expect("same ambient").is_full() {
                supplement.check(b.is_full(), || format!("B = {b}"));
            }
        }
    }
    out.push(supplement.finish("frattini_supplement", statement("frattini_supplement")));
    let mut inside = Quantified::new();
    for i in lattice.ideals().filter(|i| le(i, &frattini)) {
        inside.check(subalgebra_nilpotency_class(a, i).is_some(), || {
            format!("ideal {i}")
        });
    }
    out.push(inside.finish(
        "frattini_ideals_nilpotent",
        statement("frattini_ideals_nilpotent"),
    ));

    let star = condition_star(lattice);
    out.push(single(
        "conditions_imply_nilpotent",
        statement("conditions_imply_nilpotent"),
        both(hyp(star.holds)),
        || (nilpotent, Vec::new()),
    ));
    out.push(single(
        "nilpotent_condition_star",
        statement("nilpotent_condition_star"),
        hyp(nilpotent),
        || {
            (
                star.holds,
                star.witness.iter().map(|k| format!("K = {k}")).collect(),
            )
        },
    ));

    let v_a = lattice.invariance_number().v;
    let mut unequal = Vec::new();
    for u in lattice.subalgebras().filter(|u| !u.is_full()) {
        let v_u = lattice.invariance_number_of(u).expect("subalgebra").v;
        if v_u != v_a && unequal.len() < MAX_WITNESSES {
            unequal.push(format!("v(A) = {v_a}, v(U) = {v_u} for U = {u}"));
        }
    }
    let equal = unequal.is_empty();
    out.push(single(
        "equal_invariance_implies_nilpotent",
        statement("equal_invariance_implies_nilpotent"),
        both(hyp(equal)),
        || (nilpotent, Vec::new()),
    ));
    out.push(single(
        "nilpotent_equal_invariance",
        statement("nilpotent_equal_invariance"),
        hyp(nilpotent),
        || (equal, unequal.clone()),
    ));
    let mut lemma = Quantified::new();
    for v in maximal.iter().filter(|v| !a.is_ideal(v)) {
        let v_v = lattice.invariance_number_of(v).expect("subalgebra").v;
        lemma.check(v_a > v_v, || {
            format!("v(A) = {v_a}, v(V) = {v_v} for V = {v}")
        });
    }
    out.push(lemma.finish("invariance_lemma", statement("invariance_lemma")));

    let in_frattini: Vec<&GradedSubspace> = lattice
        .subspaces()
        .iter()
        .filter(|k| le(k, &frattini))
        .collect();
    let mut sub_q = Quantified::new();
    let subinvariant: Vec<&GradedSubspace> = lattice
        .subalgebras()
        .filter(|u| lattice.flags_of(u).is_some_and(|f| f.subinvariant))
        .collect();
    for u in &subinvariant {
        for k in in_frattini
            .iter()
            .filter(|k| le(k, u) && a.is_ideal_in(u, k))
        {
            if quotient_is_nilpotent(a, u, k) {
                sub_q.check(subalgebra_nilpotency_class(a, u).is_some(), || {
                    format!("U = {u}, K = {k}")
                });
            }
        }
    }
    out.push(sub_q.finish("subinvariant_quotient", statement("subinvariant_quotient")));
    let mut ideal_q = Quantified::new();
    for b in lattice.ideals() {
        for c in in_frattini
            .iter()
            .filter(|c| le(c, b) && a.is_ideal_in(b, c))
        {
            if quotient_is_nilpotent(a, b, c) {
                ideal_q.check(subalgebra_nilpotency_class(a, b).is_some(), || {
                    format!("B = {b}, C = {c}")
                });
            }
        }
    }
    out.push(ideal_q.finish("ideal_quotient", statement("ideal_quotient")));

    let s_star = lattice.is_s_star(cfg.allow_mixed_generators);
    out.push(single(
        "s_star",
        statement("s_star"),
        Hypothesis::Satisfied,
        || {
            let w = match &s_star.violation {
                Some(v) => vec![format!("S* violated by {}", v.subalgebra)],
                None => vec![format!(
                    "S* holds ({} non-abelian proper subalgebras checked)",
                    s_star.checked
                )],
            };
            (s_star.holds == nilpotent, w)
        },
    ));

    let generators: Vec<&GradedSubspace> = lattice
        .subalgebras()
        .filter(|n| {
            !n.is_zero()
                && subalgebra_nilpotency_class(a, n).is_some()
                && a.normal_closure(n).is_full()
        })
        .collect();
    out.push(single(
        "full_closure_generator",
        statement("full_closure_generator"),
        both(hyp(!full.is_zero())),
        || (!generators.is_empty(), Vec::new()),
    ));
    out.push(single(
        "full_closure_generator_is_a",
        statement("full_closure_generator_is_a"),
        hyp(!full.is_zero()),
        || {
            let only_a = generators.len() == 1 && generators[0].is_full();
            (
                only_a == nilpotent,
                generators
                    .iter()
                    .take(MAX_WITNESSES)
                    .map(|n| format!("N = {n}"))
                    .collect(),
            )
        },
    ));

    let mut bound = Quantified::new();
    let mut containment = Quantified::new();
    for n in lattice.ideals() {
        if let Ok(ClassBound::Checked {
            t,
            m,
            bound: b,
            class,
            holds,
        }) = class_bound_check(a, n)
        {
            bound.check(holds, || {
                format!("N = {n}: t = {t}, m = {m}, bound {b}, class {class:?}")
            });
        }
        if let Ok(report) = lemma_containment_check(a, n) {
            for case in report.cases.iter() {
                containment.check(case.holds, || {
                    format!("N = {n}: r = {}, u = {}", case.r, case.u)
                });
            }
        }
    }
    out.push(bound.finish("class_bound", statement("class_bound")));
    out.push(containment.finish(
        "mixed_power_containment",
        statement("mixed_power_containment"),
    ));
    out
}
