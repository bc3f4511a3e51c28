use rayon::prelude::*;
use serde::Serialize;

use super::NLieSuperalgebra;
use crate::parity::Parity;
use crate::scalar::Scalar;

/// Number of Filippov–Jacobi failures kept as witnesses.
const FJ_WITNESS_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A stored value has a component of the wrong parity.
    Grading {
        tuple: Vec<usize>,
        component: usize,
        expected: Parity,
    },
    /// A stored tuple with a repeated even index has a nonzero value.
    Skew { tuple: Vec<usize> },
    /// `[a₁,…,a_{n−1},[b₁,…,bₙ]]` differs from the signed Leibniz expansion.
    FilippovJacobi {
        outer: Vec<usize>,
        inner: Vec<usize>,
        lhs: Vec<Scalar>,
        rhs: Vec<Scalar>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub grading_ok: bool,
    pub skew_ok: bool,
    pub fj_ok: bool,
    pub fj_instances: u64,
    pub fj_failures: u64,
    pub char_two_caveat: bool,
    pub witnesses: Vec<Witness>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.grading_ok && self.skew_ok && self.fj_ok
    }
}

pub(crate) fn decode(mut k: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = k % d;
        k /= d;
    }
    out
}

impl NLieSuperalgebra {
    /// Runs every check and records the outcome in the validated flag.
    pub fn validate(&mut self) -> ValidationReport {
        let report = self.validation_report();
        self.validated = report.is_valid();
        report
    }

    /// Checks the parity rule and skew invariants on stored entries, then the
    /// Filippov–Jacobi identity on all `d^{2n−1}` basis instances.
    pub fn validation_report(&self) -> ValidationReport {
        let mut witnesses = Vec::new();
        let char_two = self.field.is_char_two();
        for (tuple, value) in &self.table {
            let expected = self.alpha + Parity::sum(tuple.iter().map(|&i| self.parity(i)));
            for (j, x) in value.iter().enumerate() {
                if !x.is_zero() && self.parity(j) != expected {
                    witnesses.push(Witness::Grading {
                        tuple: tuple.clone(),
                        component: j,
                        expected,
                    });
                }
            }
        }
        let grading_ok = witnesses.is_empty();
        for tuple in self.table.keys() {
            if !char_two
                && tuple
                    .windows(2)
                    .any(|w| w[0] == w[1] && !self.parity(w[0]).is_odd())
            {
                witnesses.push(Witness::Skew {
                    tuple: tuple.clone(),
                });
            }
        }
        let skew_ok = !witnesses.iter().any(|w| matches!(w, Witness::Skew { .. }));

        let d = self.dim();
        let n = self.arity;
        let outer_count = d.pow(n as u32 - 1);
        let per_outer: Vec<(u64, Vec<Witness>)> = (0..outer_count)
            .into_par_iter()
            .map(|k| self.fj_outer(&decode(k, d, n - 1)))
            .collect();
        let mut fj_failures = 0;
        for (count, ws) in per_outer {
            fj_failures += count;
            for w in ws {
                if witnesses
                    .iter()
                    .filter(|w| matches!(w, Witness::FilippovJacobi { .. }))
                    .count()
                    < FJ_WITNESS_CAP
                {
                    witnesses.push(w);
                }
            }
        }
        ValidationReport {
            grading_ok,
            skew_ok,
            fj_ok: fj_failures == 0,
            fj_instances: (outer_count * d.pow(n as u32)) as u64,
            fj_failures,
            char_two_caveat: char_two,
            witnesses,
        }
    }

    fn fj_outer(&self, a: &[usize]) -> (u64, Vec<Witness>) {
        let d = self.dim();
        let n = self.arity;
        let field = self.field;
        let pa = Parity::sum(a.iter().map(|&i| self.parity(i)));
        let mut idx = a.to_vec();
        idx.push(0);
        // columns[k] = D(a)(e_k)
        let columns: Vec<Vec<Scalar>> = (0..d)
            .map(|k| {
                idx[n - 1] = k;
                self.basis_bracket(&idx).to_vec()
            })
            .collect();
        if columns.iter().all(|c| c.iter().all(Scalar::is_zero)) {
            return (0, Vec::new());
        }
        let mut failures = 0;
        let mut witnesses = Vec::new();
        for k in 0..d.pow(n as u32) {
            let b = decode(k, d, n);
            let mut lhs = self.zero_vector();
            for (coef, col) in self.basis_bracket(&b).iter().zip(&columns) {
                if coef.is_zero() {
                    continue;
                }
                for (l, x) in lhs.iter_mut().zip(col) {
                    *l = &*l + &(coef * x);
                }
            }
            let mut rhs = self.zero_vector();
            let mut prefix = Parity::Even;
            let mut slot_args = b.clone();
            for i in 0..n {
                let sign = field.sign((self.alpha * pa + pa * prefix).is_odd());
                for (j, coef) in columns[b[i]].iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    slot_args[i] = j;
                    let c = &sign * coef;
                    for (r, x) in rhs.iter_mut().zip(self.basis_bracket(&slot_args)) {
                        if !x.is_zero() {
                            *r = &*r + &(&c * x);
                        }
                    }
                }
                slot_args[i] = b[i];
                prefix += self.parity(b[i]);
            }
            if lhs != rhs {
                failures += 1;
                if witnesses.len() < FJ_WITNESS_CAP {
                    witnesses.push(Witness::FilippovJacobi {
                        outer: a.to_vec(),
                        inner: b,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        (failures, witnesses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::paper_bc4;
    use crate::scalar::Field;

    #[test]
    fn bc4_is_valid() {
        let mut a = paper_bc4(Field::Prime(5));
        let r = a.validate();
        assert!(r.grading_ok && r.skew_ok && r.fj_ok, "{r:?}");
        assert_eq!(r.fj_instances, 2u64.pow(7));
        assert!(a.is_validated());
    }

    #[test]
    fn parity_violating_entry_is_reported() {
        let f = Field::Prime(5);
        let mut a = paper_bc4(f);
        a.set_entry(vec![0, 0, 0, 1], vec![f.zero(), f.one()])
            .unwrap();
        let r = a.validate();
        assert!(!r.grading_ok);
        assert!(r.witnesses.contains(&Witness::Grading {
            tuple: vec![0, 0, 0, 1],
            component: 1,
            expected: Parity::Odd
        }));
        assert!(!a.is_validated());
    }

    #[test]
    fn repeated_even_index_is_a_skew_failure_outside_char_two() {
        let basis = [("x", Parity::Even), ("y", Parity::Even)];
        for (p, ok) in [(3, false), (2, true)] {
            let f = Field::Prime(p);
            let mut a = NLieSuperalgebra::from_names(f, 2, Parity::Even, &basis, &[]).unwrap();
            a.set_entry(vec![0, 0], vec![f.zero(), f.one()]).unwrap();
            assert_eq!(a.validate().skew_ok, ok);
        }
    }

    #[test]
    fn odd_cube_bracket_fails_filippov_jacobi() {
        // [b,b,b] = b over F3: both sides of [b,b,[b,b,b]] differ by 2.
        let f = Field::Prime(3);
        let mut a = NLieSuperalgebra::from_names(
            f,
            3,
            Parity::Even,
            &[("b", Parity::Odd), ("c", Parity::Even)],
            &[(&["b", "b", "b"], &[("b", 1)])],
        )
        .unwrap();
        let r = a.validate();
        assert!(r.grading_ok && r.skew_ok);
        assert!(!r.fj_ok);
        let Some(Witness::FilippovJacobi { lhs, rhs, .. }) = r.witnesses.first() else {
            panic!("no witness")
        };
        assert_ne!(lhs, rhs);
    }
}
