//! Report types emitted by the commands. Every type here deserializes as well
//! as serializes, so machine reports can be read back.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use nsla_core::engel::{EngelReport, EngelVerdict, ScanStrategy, StarStarReport, StarStarVerdict};
use nsla_core::lattice::{InvarianceReport, LatticeCatalog, SubspaceFlags};
use nsla_core::representation::RepresentationReport;
use nsla_core::series::{SeriesReport, SeriesVerdict};
use nsla_core::{GradedSubspace, NLieSuperalgebra, Scalar, ValidationReport};

/// A graded subspace as `(even|odd)` dimensions and basis vectors in terms of
/// the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceView {
    pub dims: (usize, usize),
    pub basis: Vec<String>,
}

pub fn vector_text(a: &NLieSuperalgebra, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        let c = x.to_string();
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(a.name(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl SubspaceView {
    pub fn new(a: &NLieSuperalgebra, u: &GradedSubspace) -> SubspaceView {
        SubspaceView {
            dims: u.dims(),
            basis: u.basis().iter().map(|v| vector_text(a, v)).collect(),
        }
    }

    pub fn text(&self) -> String {
        format!(
            "({}|{}) span{{{}}}",
            self.dims.0,
            self.dims.1,
            self.basis.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub arity: usize,
    pub alpha: u8,
    pub dims: (usize, usize),
    pub basis: Vec<String>,
}

impl AlgebraSummary {
    pub fn new(a: &NLieSuperalgebra) -> AlgebraSummary {
        AlgebraSummary {
            field: a.field().to_string(),
            arity: a.arity(),
            alpha: a.alpha().bit(),
            dims: a.dims(),
            basis: a
                .basis()
                .iter()
                .map(|b| format!("{}:{}", b.name, b.parity))
                .collect(),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "algebra: field {}, arity {}, alpha {}, dims ({}|{}), basis [{}]",
            self.field,
            self.arity,
            self.alpha,
            self.dims.0,
            self.dims.1,
            self.basis.join(", ")
        );
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationView {
    pub valid: bool,
    pub grading_ok: bool,
    pub skew_ok: bool,
    pub filippov_jacobi_ok: bool,
    pub fj_instances: u64,
    pub fj_failures: u64,
    pub char_two_caveat: bool,
    pub witnesses: Vec<String>,
}

impl ValidationView {
    pub fn new(a: &NLieSuperalgebra, r: &ValidationReport) -> ValidationView {
        use nsla_core::Witness;
        let witnesses = r
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Grading {
                    tuple,
                    component,
                    expected,
                } => format!(
                    "parity: {} has a component on {} but values must have parity {expected}",
                    a.tuple_names(tuple),
                    a.name(*component)
                ),
                Witness::Skew { tuple } => {
                    format!(
                        "skew: {} repeats an even argument but is nonzero",
                        a.tuple_names(tuple)
                    )
                }
                Witness::FilippovJacobi {
                    outer,
                    inner,
                    lhs,
                    rhs,
                } => format!(
                    "filippov-jacobi: outer {} inner {}: lhs {} rhs {}",
                    a.tuple_names(outer),
                    a.tuple_names(inner),
                    vector_text(a, lhs),
                    vector_text(a, rhs)
                ),
            })
            .collect();
        ValidationView {
            valid: r.is_valid(),
            grading_ok: r.grading_ok,
            skew_ok: r.skew_ok,
            filippov_jacobi_ok: r.fj_ok,
            fj_instances: r.fj_instances,
            fj_failures: r.fj_failures,
            char_two_caveat: r.char_two_caveat,
            witnesses,
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "validation: {} (parity {}, skew {}, filippov-jacobi {} on {} instances, {} failures)",
            if self.valid { "valid" } else { "INVALID" },
            ok(self.grading_ok),
            ok(self.skew_ok),
            ok(self.filippov_jacobi_ok),
            self.fj_instances,
            self.fj_failures
        );
        if self.char_two_caveat {
            let _ = writeln!(out, "  note: characteristic 2, skew-symmetry does not force repeated even arguments to vanish");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness: {w}");
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fail"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationView {
    pub valid: bool,
    pub module_dims: (usize, usize),
    pub antisymmetry_ok: bool,
    pub commutator_ok: bool,
    pub bracket_ok: bool,
    pub parity_ok: bool,
    pub kernel: SubspaceView,
    pub faithful: bool,
    pub witnesses: Vec<String>,
}

impl RepresentationView {
    pub fn new(
        a: &NLieSuperalgebra,
        module_dims: (usize, usize),
        r: &RepresentationReport,
        kernel: &GradedSubspace,
        faithful: bool,
    ) -> RepresentationView {
        RepresentationView {
            valid: r.is_valid(),
            module_dims,
            antisymmetry_ok: r.antisymmetry_ok,
            commutator_ok: r.commutator_ok,
            bracket_ok: r.bracket_ok,
            parity_ok: r.parity_ok,
            kernel: SubspaceView::new(a, kernel),
            faithful,
            witnesses: r.witnesses.iter().map(|w| format!("{w:?}")).collect(),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "representation: {} on a ({}|{}) module (antisymmetry {}, commutator {}, bracket {}, parity {})",
            if self.valid { "valid" } else { "INVALID" },
            self.module_dims.0,
            self.module_dims.1,
            ok(self.antisymmetry_ok),
            ok(self.commutator_ok),
            ok(self.bracket_ok),
            ok(self.parity_ok)
        );
        let _ = writeln!(
            out,
            "  kernel {} ({})",
            self.kernel.text(),
            if self.faithful {
                "faithful"
            } else {
                "not faithful"
            }
        );
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness: {w}");
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub algebra: AlgebraSummary,
    pub validation: ValidationView,
    pub representation: Option<RepresentationView>,
}

impl ValidateReport {
    pub fn passed(&self) -> bool {
        self.validation.valid && self.representation.as_ref().is_none_or(|r| r.valid)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        self.algebra.text(&mut out);
        self.validation.text(&mut out);
        if let Some(r) = &self.representation {
            r.text(&mut out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesView {
    pub first_index: usize,
    pub terms: Vec<SubspaceView>,
    pub verdict: String,
}

impl SeriesView {
    pub fn new(a: &NLieSuperalgebra, s: &SeriesReport) -> SeriesView {
        let verdict = match s.verdict {
            SeriesVerdict::TerminatesAtZero(k) => format!("zero at term {k}"),
            SeriesVerdict::StabilizesNonzero(k) => format!("stabilizes nonzero at term {k}"),
            SeriesVerdict::Inconclusive(k) => format!("inconclusive after term {k}"),
        };
        SeriesView {
            first_index: s.first_index,
            terms: s.terms.iter().map(|t| SubspaceView::new(a, t)).collect(),
            verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanView {
    pub strategy: String,
    pub tuple_count: u128,
    /// `holds`, `fails` or `unknown`.
    pub verdict: String,
    pub witness: Option<Vec<String>>,
}

fn strategy_name(s: ScanStrategy) -> String {
    match s {
        ScanStrategy::Exhaustive => "exhaustive".into(),
        ScanStrategy::Sampled => "sampled".into(),
    }
}

impl ScanView {
    pub fn engel(a: &NLieSuperalgebra, r: &EngelReport) -> ScanView {
        let (verdict, witness) = match &r.verdict {
            EngelVerdict::AllNilpotent {
                inconclusive: false,
            } => ("holds", None),
            EngelVerdict::AllNilpotent { inconclusive: true } => ("unknown", None),
            EngelVerdict::Witness { tuple, .. } => (
                "fails",
                Some(tuple.iter().map(|v| vector_text(a, v)).collect()),
            ),
        };
        ScanView {
            strategy: strategy_name(r.strategy),
            tuple_count: r.tuple_count,
            verdict: verdict.into(),
            witness,
        }
    }

    pub fn star_star(a: &NLieSuperalgebra, r: &StarStarReport) -> ScanView {
        let (verdict, witness) = match &r.verdict {
            StarStarVerdict::Holds => ("holds", None),
            StarStarVerdict::Unknown => ("unknown", None),
            StarStarVerdict::Fails { tuple } => (
                "fails",
                Some(tuple.iter().map(|v| vector_text(a, v)).collect()),
            ),
        };
        ScanView {
            strategy: strategy_name(r.strategy),
            tuple_count: r.tuple_count,
            verdict: verdict.into(),
            witness,
        }
    }

    fn text(&self, label: &str, out: &mut String) {
        let _ = write!(
            out,
            "{label}: {} ({} scan over {} tuples)",
            self.verdict, self.strategy, self.tuple_count
        );
        if let Some(w) = &self.witness {
            let _ = write!(out, ", witness ({})", w.join(", "));
        }
        out.push('\n');
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceView {
    pub v: usize,
    pub chain: Vec<SubspaceView>,
    pub subinvariant_members: usize,
}

impl InvarianceView {
    pub fn new(a: &NLieSuperalgebra, r: &InvarianceReport) -> InvarianceView {
        InvarianceView {
            v: r.v,
            chain: r.chain.iter().map(|u| SubspaceView::new(a, u)).collect(),
            subinvariant_members: r.subinvariant_members,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub subspaces: usize,
    pub subalgebras: usize,
    pub ideals: usize,
    pub maximal_subalgebras: Vec<SubspaceView>,
    pub maximal_ideals: Vec<SubspaceView>,
    pub frattini: SubspaceView,
    pub phi: SubspaceView,
    pub jacobson: SubspaceView,
    pub condition_star: bool,
    pub s_star: bool,
    pub invariance: InvarianceView,
}

impl LatticeSummary {
    pub fn new(lat: &LatticeCatalog, allow_mixed: bool) -> LatticeSummary {
        let a = lat.algebra();
        let view = |u: &GradedSubspace| SubspaceView::new(a, u);
        let (frattini, phi) = lat.frattini_phi();
        LatticeSummary {
            subspaces: lat.len(),
            subalgebras: lat.subalgebras().count(),
            ideals: lat.ideals().count(),
            maximal_subalgebras: lat.maximal_subalgebras().into_iter().map(view).collect(),
            maximal_ideals: lat.maximal_ideals().into_iter().map(view).collect(),
            frattini: view(&frattini),
            phi: view(&phi),
            jacobson: view(&lat.jacobson()),
            condition_star: nsla_core::engel::condition_star(lat).holds,
            s_star: lat.is_s_star(allow_mixed).holds,
            invariance: InvarianceView::new(a, &lat.invariance_number()),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "lattice: {} graded subspaces, {} subalgebras, {} ideals",
            self.subspaces, self.subalgebras, self.ideals
        );
        for m in &self.maximal_subalgebras {
            let _ = writeln!(out, "  maximal subalgebra {}", m.text());
        }
        for m in &self.maximal_ideals {
            let _ = writeln!(out, "  maximal ideal {}", m.text());
        }
        let _ = writeln!(out, "frattini F(A): {}", self.frattini.text());
        let _ = writeln!(out, "phi(A): {}", self.phi.text());
        let _ = writeln!(out, "jacobson J(A): {}", self.jacobson.text());
        let _ = writeln!(
            out,
            "condition *: {}",
            if self.condition_star {
                "holds"
            } else {
                "fails"
            }
        );
        let _ = writeln!(out, "S*: {}", if self.s_star { "holds" } else { "fails" });
        let _ = writeln!(
            out,
            "invariance number v(A): {} (chain of length {}, {} subinvariant)",
            self.invariance.v,
            self.invariance.chain.len(),
            self.invariance.subinvariant_members
        );
        for u in &self.invariance.chain {
            let _ = writeln!(out, "  > {}", u.text());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityView {
    pub k: usize,
    pub solvable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub algebra: AlgebraSummary,
    pub validation: ValidationView,
    pub derived_algebra: SubspaceView,
    pub lower_central_series: SeriesView,
    pub nilpotency_class: Option<usize>,
    pub solvability: Vec<SolvabilityView>,
    pub engel: ScanView,
    pub condition_star_star: ScanView,
    pub lattice: Option<LatticeSummary>,
    /// Why the lattice section is absent.
    pub lattice_skipped: Option<String>,
}

impl AnalyzeReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        self.algebra.text(&mut out);
        self.validation.text(&mut out);
        let _ = writeln!(out, "derived algebra A^2: {}", self.derived_algebra.text());
        let _ = writeln!(
            out,
            "lower central series ({}):",
            self.lower_central_series.verdict
        );
        for (k, t) in self.lower_central_series.terms.iter().enumerate() {
            let _ = writeln!(
                out,
                "  A^{} = {}",
                k + self.lower_central_series.first_index,
                t.text()
            );
        }
        match self.nilpotency_class {
            Some(c) => {
                let _ = writeln!(out, "nilpotent of class {c}");
            }
            None => out.push_str("not nilpotent\n"),
        }
        let solvable: Vec<String> = self
            .solvability
            .iter()
            .filter(|s| s.solvable)
            .map(|s| s.k.to_string())
            .collect();
        let _ = writeln!(
            out,
            "k-solvable for k in: {}",
            if solvable.is_empty() {
                "none".to_string()
            } else {
                solvable.join(", ")
            }
        );
        self.engel.text("engel (all D(a) nilpotent)", &mut out);
        self.condition_star_star.text("condition **", &mut out);
        match (&self.lattice, &self.lattice_skipped) {
            (Some(l), _) => l.text(&mut out),
            (None, Some(why)) => {
                let _ = writeln!(out, "lattice: skipped ({why})");
            }
            (None, None) => {}
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEntry {
    pub subspace: SubspaceView,
    pub flags: SubspaceFlagsView,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceFlagsView {
    pub subalgebra: bool,
    pub ideal: bool,
    pub weak_ideal: bool,
    pub abelian_ideal: bool,
    pub maximal_subalgebra: bool,
    pub maximal_ideal: bool,
    pub subinvariant: bool,
}

impl From<SubspaceFlags> for SubspaceFlagsView {
    fn from(f: SubspaceFlags) -> Self {
        SubspaceFlagsView {
            subalgebra: f.subalgebra,
            ideal: f.ideal,
            weak_ideal: f.weak_ideal,
            abelian_ideal: f.abelian_ideal,
            maximal_subalgebra: f.maximal_subalgebra,
            maximal_ideal: f.maximal_ideal,
            subinvariant: f.subinvariant,
        }
    }
}

impl SubspaceFlagsView {
    fn text(&self) -> String {
        let names = [
            (self.subalgebra, "subalgebra"),
            (self.ideal, "ideal"),
            (self.weak_ideal, "weak-ideal"),
            (self.abelian_ideal, "abelian-ideal"),
            (self.maximal_subalgebra, "maximal-subalgebra"),
            (self.maximal_ideal, "maximal-ideal"),
            (self.subinvariant, "subinvariant"),
        ];
        let set: Vec<&str> = names.iter().filter(|(b, _)| *b).map(|(_, n)| *n).collect();
        if set.is_empty() {
            "-".into()
        } else {
            set.join(" ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDump {
    pub algebra: AlgebraSummary,
    pub summary: LatticeSummary,
    pub entries: Vec<LatticeEntry>,
}

impl LatticeDump {
    pub fn new(lat: &LatticeCatalog, allow_mixed: bool) -> LatticeDump {
        let a = lat.algebra();
        LatticeDump {
            algebra: AlgebraSummary::new(a),
            summary: LatticeSummary::new(lat, allow_mixed),
            entries: lat
                .subspaces()
                .iter()
                .zip(lat.flags())
                .map(|(u, f)| LatticeEntry {
                    subspace: SubspaceView::new(a, u),
                    flags: (*f).into(),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        self.algebra.text(&mut out);
        self.summary.text(&mut out);
        for e in &self.entries {
            let _ = writeln!(out, "{}  {}", e.subspace.text(), e.flags.text());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordView {
    pub id: String,
    pub statement: String,
    pub hypothesis: String,
    pub conclusion: String,
    pub instances: usize,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceView {
    pub source: String,
    pub algebra: AlgebraSummary,
    pub valid: bool,
    pub passed: bool,
    pub records: Vec<RecordView>,
}

impl ConformanceView {
    pub fn text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "{}: {}",
            self.source,
            match (self.valid, self.passed) {
                (false, _) => "INVALID ALGEBRA",
                (true, true) => "all applicable items pass",
                (true, false) => "FAILURES",
            }
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "  {:<14} {:<36} hypothesis {:<13} instances {:<4} {}",
                r.conclusion, r.id, r.hypothesis, r.instances, r.statement
            );
            for w in &r.witnesses {
                let _ = writeln!(out, "                 witness: {w}");
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceSuite {
    pub algebras: Vec<ConformanceView>,
    pub passed: bool,
}

impl ConformanceSuite {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.algebras {
            c.text(&mut out);
        }
        let failed = self.algebras.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            out,
            "{} algebras, {} with failures",
            self.algebras.len(),
            failed
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WriteReport {
    pub written: Vec<String>,
    pub note: String,
}

impl WriteReport {
    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.note);
        for w in &self.written {
            let _ = writeln!(out, "  {w}");
        }
        out
    }
}
