//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Independent oracles live in this file and share no code with
//! the library beyond reading stored structure constants.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nsla_core::catalog::{
    abelian, act3, brute_force_enumerate, paper_bc, reference_corpus, standard_catalog,
    vector_product, DEFAULT_ENUMERATION_BUDGET,
};
use nsla_core::engel::{engel_scan, fitting_zero_component, ScanConfig, ScanStrategy};
use nsla_core::lattice::{LatticeCatalog, DEFAULT_LATTICE_BUDGET};
use nsla_core::linalg::{envelope_nilpotency, Nilpotency};
use nsla_core::representation::{
    regular_representation, representation_from_module, s_star_rho_check, semidirect_sum,
    validate_representation,
};
use nsla_core::series::{class_bound_check, lemma_containment_check, nilpotency_class, ClassBound};
use nsla_core::{Field, GradedSubspace, Matrix, NLieSuperalgebra, Parity, Scalar, Witness};

type Outcome = Result<String, String>;

/// Checks a condition, recording up to a few failure descriptions.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn failed(&self) -> usize {
        self.failures.len()
    }

    fn summary(&self, label: &str) -> String {
        let shown: Vec<&str> = self
            .failures
            .iter()
            .filter(|s| !s.is_empty())
            .map(String::as_str)
            .collect();
        format!(
            "{label}: {} of {} fail, e.g. {}",
            self.failed(),
            self.checked,
            shown.join("; ")
        )
    }
}

// ---------------------------------------------------------------------------
// Dense oracle: the full bracket tensor over F_p with Koszul signs from
// inversion counts, and a direct transcription of the Filippov–Jacobi identity.

struct DenseOracle {
    p: u64,
    d: usize,
    n: usize,
    alpha: u64,
    par: Vec<u64>,
    /// Bracket of every basis tuple (row-major tuple code).
    tensor: Vec<Vec<u64>>,
}

fn residue(x: &Scalar) -> u64 {
    x.residue().expect("finite field") as u64
}

impl DenseOracle {
    fn new(a: &NLieSuperalgebra) -> DenseOracle {
        let p = a.field().characteristic() as u64;
        let (d, n) = (a.dim(), a.arity());
        let par: Vec<u64> = (0..d).map(|i| a.parity(i).bit() as u64).collect();
        let mut tensor = vec![vec![0; d]; d.pow(n as u32)];
        for (code, slot) in tensor.iter_mut().enumerate() {
            let t = decode(code, d, n);
            let mut sorted = t.clone();
            sorted.sort();
            let Some(v) = a.entry(&sorted) else { continue };
            let mut neg = false;
            for i in 0..n {
                for j in i + 1..n {
                    if t[i] > t[j] {
                        // One transposition of homogeneous neighbours: −(−1)^{pq}.
                        neg ^= par[t[i]] * par[t[j]] == 0;
                    }
                }
            }
            for (k, x) in v.iter().enumerate() {
                let r = residue(x);
                slot[k] = if neg { (p - r) % p } else { r };
            }
        }
        DenseOracle {
            p,
            d,
            n,
            alpha: a.alpha().bit() as u64,
            par,
            tensor,
        }
    }

    fn code(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    fn bracket(&self, t: &[usize]) -> &[u64] {
        &self.tensor[self.code(t)]
    }

    /// `[a, Σ_k v_k e_k]` with the last slot linear.
    fn bracket_last(&self, head: &[usize], v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.d];
        let mut t = head.to_vec();
        t.push(0);
        for (k, &c) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
            t[self.n - 1] = k;
            for (o, &x) in out.iter_mut().zip(self.bracket(&t)) {
                *o = (*o + c * x) % self.p;
            }
        }
        out
    }

    fn fj_sides(&self, a: &[usize], b: &[usize]) -> (Vec<u64>, Vec<u64>) {
        let p = self.p;
        let lhs = self.bracket_last(a, self.bracket(b));
        let pa: u64 = a.iter().map(|&i| self.par[i]).sum::<u64>() % 2;
        let mut rhs = vec![0; self.d];
        let mut prefix = 0;
        for i in 0..self.n {
            let sign_odd = (self.alpha * pa + pa * prefix) % 2 == 1;
            let mut head = a.to_vec();
            head.push(b[i]);
            let inner = self.bracket(&head).to_vec();
            let mut t = b.to_vec();
            for (k, &c) in inner.iter().enumerate().filter(|(_, c)| **c != 0) {
                t[i] = k;
                for (r, &x) in rhs.iter_mut().zip(self.bracket(&t)) {
                    let term = c * x % p;
                    *r = if sign_odd {
                        (*r + p - term) % p
                    } else {
                        (*r + term) % p
                    };
                }
            }
            prefix += self.par[b[i]];
        }
        (lhs, rhs)
    }

    fn grading_ok(&self, a: &NLieSuperalgebra) -> bool {
        a.entries().all(|(t, v)| {
            let expected = (self.alpha + t.iter().map(|&i| self.par[i]).sum::<u64>()) % 2;
            v.iter()
                .enumerate()
                .all(|(k, x)| x.is_zero() || self.par[k] == expected)
        })
    }

    fn skew_ok(&self, a: &NLieSuperalgebra) -> bool {
        a.entries()
            .all(|(t, _)| !t.windows(2).any(|w| w[0] == w[1] && self.par[w[0]] == 0))
    }

    fn fj_ok(&self) -> bool {
        let (d, n) = (self.d, self.n);
        (0..d.pow(n as u32 - 1)).all(|ca| {
            let a = decode(ca, d, n - 1);
            (0..d.pow(n as u32)).all(|cb| {
                let (l, r) = self.fj_sides(&a, &decode(cb, d, n));
                l == r
            })
        })
    }

    fn valid(&self, a: &NLieSuperalgebra) -> bool {
        self.grading_ok(a) && self.skew_ok(a) && self.fj_ok()
    }

    /// Confirms a library witness against this oracle.
    fn confirms(&self, a: &NLieSuperalgebra, w: &Witness) -> bool {
        match w {
            Witness::Grading {
                tuple,
                component,
                expected,
            } => {
                let e = (self.alpha + tuple.iter().map(|&i| self.par[i]).sum::<u64>()) % 2;
                let value = a
                    .entry(tuple)
                    .map(|v| !v[*component].is_zero())
                    .unwrap_or(false);
                value && e == expected.bit() as u64 && self.par[*component] != e
            }
            Witness::Skew { tuple } => {
                a.entry(tuple).is_some()
                    && tuple
                        .windows(2)
                        .any(|w| w[0] == w[1] && self.par[w[0]] == 0)
            }
            Witness::FilippovJacobi {
                outer,
                inner,
                lhs,
                rhs,
            } => {
                let (l, r) = self.fj_sides(outer, inner);
                let lib_l: Vec<u64> = lhs.iter().map(residue).collect();
                let lib_r: Vec<u64> = rhs.iter().map(residue).collect();
                l != r && l == lib_l && r == lib_r
            }
        }
    }
}

fn decode(mut code: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = code % d;
        code /= d;
    }
    out
}

fn multisets(d: usize, len: usize) -> Vec<Vec<usize>> {
    (0..d.pow(len as u32))
        .map(|c| decode(c, d, len))
        .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

// ---------------------------------------------------------------------------
// Word oracle for envelopes: the distinct products of k generators, by brute force.

fn word_oracle(dim: usize, ops: &[Matrix]) -> Nilpotency {
    let nonzero: Vec<&Matrix> = ops.iter().filter(|m| !m.is_zero()).collect();
    if nonzero.is_empty() {
        return Nilpotency::Nilpotent(1);
    }
    let mut words: HashSet<Matrix> = nonzero.iter().map(|m| (*m).clone()).collect();
    for k in 2..=dim.max(1) + 1 {
        let mut next = HashSet::new();
        for g in &nonzero {
            for w in &words {
                let prod = g.mul(w).expect("square");
                if !prod.is_zero() {
                    next.insert(prod);
                }
            }
        }
        if next.is_empty() {
            return Nilpotency::Nilpotent(k);
        }
        words = next;
    }
    Nilpotency::NotNilpotent
}

// ---------------------------------------------------------------------------

fn specimens(field: Field) -> Vec<(String, NLieSuperalgebra)> {
    vec![
        ("paper_bc(4)".into(), paper_bc(field, 4).unwrap()),
        (
            "abelian(1,1,3)".into(),
            abelian(field, 1, 1, 3, Parity::Even).unwrap(),
        ),
        (
            "abelian(1,1,4,odd)".into(),
            abelian(field, 1, 1, 4, Parity::Odd).unwrap(),
        ),
        ("act3".into(), act3(field).unwrap()),
        (
            "vector_product(3)".into(),
            vector_product(field, 3).unwrap(),
        ),
    ]
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tally = Tally::default();
    let mut perturbations = 0;
    let mut rejected = 0;
    for p in [3u32, 5] {
        let field = Field::Prime(p);
        for (name, a) in specimens(field) {
            let oracle = DenseOracle::new(&a);
            tally.check(a.validation_report().is_valid() && oracle.valid(&a), || {
                format!("{name} over {field} invalid")
            });
            // Every single-entry perturbation, split by the oracle's verdict.
            let mut invalid = Vec::new();
            for t in multisets(a.dim(), a.arity()) {
                for k in 0..a.dim() {
                    for delta in 1..p {
                        let mut b = a.clone();
                        let mut v = b.entry(&t).cloned().unwrap_or_else(|| b.zero_vector());
                        v[k] = &v[k] + &field.from_i64(delta as i64);
                        b.set_entry(t.clone(), v).unwrap();
                        let lib = b.validation_report();
                        let truth = DenseOracle::new(&b).valid(&b);
                        perturbations += 1;
                        tally.check(lib.is_valid() == truth, || {
                            format!("{name} over {field}: perturbing {t:?}[{k}] by {delta}: library {} oracle {truth}", lib.is_valid())
                        });
                        if !truth {
                            invalid.push((b, lib));
                        }
                    }
                }
            }
            if invalid.is_empty() {
                return Err(format!("{name} over {field}: no invalid perturbation"));
            }
            // 50 seeded draws from the invalid perturbations must carry a confirmed witness.
            for _ in 0..50 {
                let (b, lib) = &invalid[rng.gen_range(0..invalid.len())];
                let oracle = DenseOracle::new(b);
                let confirmed = !lib.witnesses.is_empty()
                    && lib.witnesses.iter().all(|w| oracle.confirms(b, w));
                rejected += usize::from(confirmed);
                tally.check(confirmed, || {
                    format!(
                        "{name} over {field}: unconfirmed witness {:?}",
                        lib.witnesses.first()
                    )
                });
            }
        }
    }
    if tally.failed() > 0 {
        return Err(tally.summary("validation"));
    }
    Ok(format!(
        "10 specimens valid; {perturbations} single-entry perturbations agree with the dense oracle; {rejected} sampled invalid ones rejected with confirmed witnesses"
    ))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for p in [2u32, 3, 5, 7] {
        let field = Field::Prime(p);
        let a = paper_bc(field, 4).unwrap();
        let class = nilpotency_class(&a);
        let a2 = a.derived_algebra();
        if class != Some(2) || a.dim() - a2.dim() != 1 {
            return Err(format!(
                "over {field}: class {class:?}, dim A/A^2 = {}",
                a.dim() - a2.dim()
            ));
        }
        let b = a.vector(a.basis_vector(0)).unwrap();
        let c = a.vector(a.basis_vector(1)).unwrap();
        // D(b,…,b,c) with n−2 copies of b.
        let zero = fitting_zero_component(&a, &[b.clone(), b.clone(), c]).unwrap();
        if !zero.is_full() {
            return Err(format!("over {field}: A0(D(b,b,c)) = {zero}"));
        }
        notes.push(field.to_string());
    }
    Ok(format!(
        "paper_bc(4) over {}: class 2, dim A/A^2 = 1, A0(D(b,b,c)) = A",
        notes.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    let mut tally = Tally::default();
    let mut counts = Vec::new();
    for (n, p) in [(4usize, 2u32), (3, 3)] {
        let stream = brute_force_enumerate(1, 1, n, p, None, DEFAULT_ENUMERATION_BUDGET)
            .map_err(|e| e.to_string())?;
        let cfg = ScanConfig::default();
        let mut nilpotent = 0;
        for e in &stream {
            let r = engel_scan(&e.algebra, &cfg);
            let class = nilpotency_class(&e.algebra);
            nilpotent += usize::from(class.is_some());
            tally.check(
                r.strategy == ScanStrategy::Exhaustive && r.all_nilpotent() == class.is_some(),
                || {
                    format!(
                        "n={n} F{p} #{}: scan {:?}, class {class:?}",
                        e.index, r.verdict
                    )
                },
            );
        }
        counts.push(format!(
            "n={n} F{p}: {} algebras ({nilpotent} nilpotent)",
            stream.len()
        ));
    }
    if tally.failed() > 0 {
        return Err(tally.summary("engel"));
    }
    Ok(format!(
        "exhaustive scan agrees with the lower central series on {}",
        counts.join(", ")
    ))
}

struct LatticeCorpus {
    entries: Vec<(String, LatticeCatalog)>,
}

impl LatticeCorpus {
    fn build() -> LatticeCorpus {
        let entries = reference_corpus()
            .unwrap()
            .into_iter()
            .filter_map(|e| {
                LatticeCatalog::build(&e.algebra, DEFAULT_LATTICE_BUDGET)
                    .ok()
                    .map(|l| (e.label, l))
            })
            .collect();
        LatticeCorpus { entries }
    }
}

fn le(small: &GradedSubspace, big: &GradedSubspace) -> bool {
    big.contains_subspace(small).unwrap()
}

fn criterion_4(corpus: &LatticeCorpus) -> Outcome {
    let mut tally = Tally::default();
    let mut nilpotent = 0;
    for (label, lat) in &corpus.entries {
        let a = lat.algebra();
        let a2 = a.derived_algebra();
        let (f, phi) = lat.frattini_phi();
        let j = lat.jacobson();
        tally.check(le(&f, &a2) && le(&j, &a2), || {
            format!("{label}: F = {f}, J = {j}, A^2 = {a2}")
        });
        if nilpotency_class(a).is_some() {
            nilpotent += 1;
            tally.check(f == a2 && phi == a2 && j == a2, || {
                format!("{label}: F = {f}, phi = {phi}, J = {j}, A^2 = {a2}")
            });
        }
    }
    if tally.failed() > 0 {
        return Err(tally.summary("radicals"));
    }
    Ok(format!(
        "{} corpus algebras: F, J inside A^2; F = A^2 = phi = J on all {nilpotent} nilpotent ones",
        corpus.entries.len()
    ))
}

fn criterion_5(corpus: &LatticeCorpus) -> Outcome {
    let mut tally = Tally::default();
    for (label, lat) in &corpus.entries {
        let s = lat.is_s_star(false);
        let nilpotent = nilpotency_class(lat.algebra()).is_some();
        tally.check(s.holds == nilpotent, || {
            format!(
                "{label}: S* {} ({} non-abelian proper subalgebras), nilpotent {nilpotent}",
                s.holds, s.checked
            )
        });
    }
    if tally.failed() > 0 {
        return Err(tally.summary("S* <=> nilpotent"));
    }
    Ok(format!(
        "S* agrees with nilpotency on {} corpus algebras",
        tally.checked
    ))
}

fn criterion_6(corpus: &LatticeCorpus) -> Outcome {
    let mut value = Tally::default();
    let mut equal = Tally::default();
    let mut lemma = Tally::default();
    for (label, lat) in &corpus.entries {
        let a = lat.algebra();
        let v = lat.invariance_number().v;
        if nilpotency_class(a).is_some() {
            value.check(v == 1, || format!("{label}: v(A) = {v}"));
            for u in lat.subalgebras().filter(|u| !u.is_full()) {
                let vu = lat.invariance_number_of(u).unwrap().v;
                equal.check(vu == v, || format!("{label}: v(A) = {v}, v({u}) = {vu}"));
            }
        }
        for m in lat.maximal_subalgebras() {
            if !a.is_ideal(m) {
                let vm = lat.invariance_number_of(m).unwrap().v;
                lemma.check(v > vm, || format!("{label}: v(A) = {v}, v({m}) = {vm}"));
            }
        }
    }
    let parts = [
        ("v(A) = 1", &value),
        ("v(A) = v(U)", &equal),
        ("v(A) > v(V)", &lemma),
    ];
    let line = parts
        .iter()
        .map(|(l, t)| format!("{l}: {}/{}", t.checked - t.failed(), t.checked))
        .collect::<Vec<_>>()
        .join(", ");
    let failing: Vec<String> = parts
        .iter()
        .filter(|(_, t)| t.failed() > 0)
        .map(|(l, t)| t.summary(l))
        .collect();
    if failing.is_empty() {
        Ok(line)
    } else {
        Err(format!("{line}; {}", failing.join(" | ")))
    }
}

fn criterion_7(corpus: &LatticeCorpus) -> Outcome {
    let mut bound = Tally::default();
    let mut containment = Tally::default();
    let mut cases = 0;
    for (label, lat) in &corpus.entries {
        let a = lat.algebra();
        for n in lat.ideals() {
            match class_bound_check(a, n).unwrap() {
                ClassBound::Checked {
                    t,
                    m,
                    bound: b,
                    class,
                    holds,
                } => {
                    bound.check(holds, || {
                        format!("{label}, N = {n}: t {t}, m {m}, bound {b}, class {class:?}")
                    });
                }
                ClassBound::Vacuous | ClassBound::Inapplicable { .. } => {}
            }
            if let Ok(r) = lemma_containment_check(a, n) {
                cases += r.cases.len();
                containment.check(r.holds(), || {
                    format!("{label}, N = {n}: {:?}", r.cases.iter().find(|c| !c.holds))
                });
            }
        }
    }
    let mut errors = Vec::new();
    if bound.failed() > 0 {
        errors.push(bound.summary("class bound"));
    }
    if containment.failed() > 0 {
        errors.push(containment.summary("containment"));
    }
    if !errors.is_empty() {
        return Err(errors.join(" | "));
    }
    Ok(format!(
        "class bound on {} (algebra, ideal) pairs; containments on {} pairs ({cases} cases)",
        bound.checked, containment.checked
    ))
}

fn criterion_8() -> Outcome {
    let mut tally = Tally::default();
    let mut count = 0;
    for field in [Field::Prime(3), Field::Prime(5), Field::Rational] {
        for entry in standard_catalog(field).unwrap() {
            let a = &entry.algebra;
            let label = format!("{} over {field}", entry.name);
            let rho = regular_representation(a);
            count += 1;
            tally.check(validate_representation(&rho).is_valid(), || {
                format!("{label}: representation invalid")
            });
            let b = match semidirect_sum(&rho) {
                Ok(b) => b,
                Err(e) => {
                    tally.check(false, || format!("{label}: semidirect sum failed: {e}"));
                    continue;
                }
            };
            tally.check(b.is_validated() && b.validation_report().is_valid(), || {
                format!("{label}: A ⋉ A invalid")
            });
            let d = a.dim();
            let sub = b.span(&(0..d).map(|i| b.basis_vector(i)).collect::<Vec<_>>());
            let module = b.span(&(d..b.dim()).map(|i| b.basis_vector(i)).collect::<Vec<_>>());
            tally.check(b.is_subalgebra(&sub) && b.is_abelian_ideal(&module), || {
                format!("{label}: bad embedding")
            });
            match representation_from_module(&b, &sub, &module) {
                Ok(back) => {
                    let same = back.algebra() == a
                        && back.module_grading() == rho.module_grading()
                        && back.entries().collect::<Vec<_>>() == rho.entries().collect::<Vec<_>>();
                    tally.check(same, || format!("{label}: round trip differs"));
                }
                Err(e) => tally.check(false, || format!("{label}: {e}")),
            }
            let (ker, _) = rho.kernel_and_faithful();
            tally.check(a.is_ideal(&ker), || {
                format!("{label}: kernel {ker} is not an ideal")
            });
        }
    }
    if tally.failed() > 0 {
        return Err(tally.summary("representations"));
    }
    Ok(format!("{count} regular representations over F3, F5, Q: valid, semidirect sums valid, exact round trips, kernels ideals"))
}

fn catalog_lattices() -> Vec<(String, LatticeCatalog)> {
    [Field::Prime(2), Field::Prime(3), Field::Prime(5)]
        .into_iter()
        .flat_map(|f| {
            standard_catalog(f)
                .unwrap()
                .into_iter()
                .map(move |e| (format!("{} over {f}", e.name), e.algebra))
        })
        .map(|(label, a)| {
            (
                label,
                LatticeCatalog::build(&a, DEFAULT_LATTICE_BUDGET).unwrap(),
            )
        })
        .collect()
}

fn criterion_9(lattices: &[(String, LatticeCatalog)]) -> Outcome {
    let mut tally = Tally::default();
    let mut nilpotent_generators = 0;
    let cfg = ScanConfig::default();
    for (label, lat) in lattices {
        let rho = regular_representation(lat.algebra());
        for s in lat.subalgebras() {
            let r = s_star_rho_check(&rho, s, &cfg).unwrap();
            if r.operators_nilpotent {
                nilpotent_generators += 1;
                tally.check(
                    r.strategy == ScanStrategy::Exhaustive && r.envelope.is_nilpotent() && r.holds,
                    || format!("{label}, S = {s}: envelope {:?}", r.envelope),
                );
            }
        }
    }
    if tally.failed() > 0 {
        return Err(tally.summary("envelopes"));
    }
    Ok(format!(
        "{nilpotent_generators} bracket-closed S with nilpotent generators across {} catalog lattices: all envelopes nilpotent",
        lattices.len()
    ))
}

fn criterion_10(corpus: &LatticeCorpus, lattices: &[(String, LatticeCatalog)]) -> Outcome {
    let mut closure = Tally::default();
    let mut subinvariance = Tally::default();
    let mut envelope = Tally::default();
    let all = corpus.entries.iter().chain(lattices);
    for (label, lat) in all {
        let a = lat.algebra();
        for s in lat.subspaces() {
            let fast = a.normal_closure(s);
            let oracle = lat.closure_oracle(s);
            closure.check(fast == oracle, || {
                format!("{label}, S = {s}: {fast} vs {oracle}")
            });
        }
        for t in lat.subalgebras() {
            let exhaustive = lat.is_subinvariant(t).unwrap();
            let chain_ok = exhaustive.as_ref().is_none_or(|chain| {
                let mut prev = a.full_space();
                chain.iter().all(|c| {
                    let ok = a.is_ideal_in(&prev, c);
                    prev = c.clone();
                    ok
                }) && chain.last().is_none_or(|c| c == t)
            });
            let fast = lat.is_subinvariant_fast(t);
            subinvariance.check(chain_ok && fast == exhaustive.is_some(), || {
                format!(
                    "{label}, T = {t}: fast {fast}, search {}",
                    exhaustive.is_some()
                )
            });
        }
        if a.dim() <= 4 {
            let rho = regular_representation(a);
            let slots = a.arity() - 1;
            for s in lat.subalgebras() {
                let basis = s.basis();
                if basis.is_empty() {
                    continue;
                }
                let ops: Vec<Matrix> = (0..basis.len().pow(slots as u32))
                    .map(|c| {
                        let t = decode(c, basis.len(), slots);
                        let refs: Vec<&[Scalar]> = t.iter().map(|&i| basis[i].as_slice()).collect();
                        rho.operator(&refs).unwrap()
                    })
                    .collect();
                let lib = envelope_nilpotency(a.dim(), &ops).unwrap();
                let oracle = word_oracle(a.dim(), &ops);
                envelope.check(lib == oracle, || {
                    format!("{label}, S = {s}: {lib:?} vs words {oracle:?}")
                });
            }
        }
    }
    let parts = [
        ("normal closure", &closure),
        ("subinvariance", &subinvariance),
        ("envelope", &envelope),
    ];
    let line = parts
        .iter()
        .map(|(l, t)| format!("{l} {}/{}", t.checked - t.failed(), t.checked))
        .collect::<Vec<_>>()
        .join(", ");
    let failing: Vec<String> = parts
        .iter()
        .filter(|(_, t)| t.failed() > 0)
        .map(|(l, t)| t.summary(l))
        .collect();
    if failing.is_empty() {
        Ok(line)
    } else {
        Err(format!("{line}; {}", failing.join(" | ")))
    }
}

fn report(id: usize, title: &str, started: Instant, outcome: &Outcome) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {id:>2} [{secs:6.2}s] {title}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL criterion {id:>2} [{secs:6.2}s] {title}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut passed = 0;
    let mut run = |id: usize, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        passed += usize::from(report(id, title, t, &outcome));
    };
    run(1, "validation soundness", &mut criterion_1);
    run(2, "paper_bc(4) example", &mut criterion_2);
    run(3, "Engel cross-check", &mut criterion_3);
    let t = Instant::now();
    let corpus = LatticeCorpus::build();
    let lattices = catalog_lattices();
    println!(
        "      lattices built for {} corpus and {} catalog algebras in {:.2}s",
        corpus.entries.len(),
        lattices.len(),
        t.elapsed().as_secs_f64()
    );
    run(4, "radical identities", &mut || criterion_4(&corpus));
    run(5, "S* characterization", &mut || criterion_5(&corpus));
    run(6, "invariance numbers", &mut || criterion_6(&corpus));
    run(7, "class bound and containments", &mut || {
        criterion_7(&corpus)
    });
    run(8, "representation equivalence", &mut criterion_8);
    run(9, "envelope theorem", &mut || criterion_9(&lattices));
    run(10, "oracle agreements", &mut || {
        criterion_10(&corpus, &lattices)
    });
    println!("acceptance: {passed} of 10 criteria pass");
    if passed == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
