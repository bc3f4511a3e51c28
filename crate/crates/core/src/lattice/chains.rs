use std::collections::VecDeque;

use serde::Serialize;

use super::LatticeCatalog;
use crate::error::{Error, Result};
use crate::linalg::GradedSubspace;

/// `v` of an algebra together with a chain attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub v: usize,
    /// `U₁ ⊃ ⋯ ⊃ U_k`, each maximal in its predecessor (the root is implicit).
    pub chain: Vec<GradedSubspace>,
    /// Members of `chain` that are subinvariant in the root.
    pub subinvariant_members: usize,
}

impl LatticeCatalog {
    /// Breadth-first search from `root` along "is an ideal of" among the
    /// subalgebras below it. Entry `k` is the predecessor of `k` on a chain from
    /// `root`; `root` maps to itself and unreachable positions to `None`.
    pub(super) fn chain_search(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.subalgebras.len()];
        parent[root] = Some(root);
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            let big = self.sub(s);
            for &x in &self.below[s] {
                if parent[x].is_none() && self.algebra.is_ideal_in(big, self.sub(x)) {
                    parent[x] = Some(s);
                    queue.push_back(x);
                }
            }
        }
        parent
    }

    fn require_subalgebra(&self, t: &GradedSubspace) -> Result<usize> {
        self.position(t).ok_or(Error::NotHmc)
    }

    /// Exhaustive search for `A = T₀ ⊃ T₁ ⊃ ⋯ ⊃ T_k = T` with each `Tᵢ` an ideal of
    /// `T_{i−1}`. Returns the chain `T₁,…,T_k` (empty for `T = A`) if one exists.
    pub fn is_subinvariant(&self, t: &GradedSubspace) -> Result<Option<Vec<GradedSubspace>>> {
        let k = self.require_subalgebra(t)?;
        let top = self.top();
        if self.chain_parent[k].is_none() {
            return Ok(None);
        }
        let mut chain = Vec::new();
        let mut cur = k;
        while cur != top {
            chain.push(self.sub(cur).clone());
            cur = self.chain_parent[cur].expect("reached positions have parents");
        }
        chain.reverse();
        Ok(Some(chain))
    }

    /// Iterated relative normal closures `A_{i+1} = T^{A_i}`; `T` is subinvariant
    /// exactly when the descent stops at `T`.
    pub fn is_subinvariant_fast(&self, t: &GradedSubspace) -> bool {
        let mut ambient = self.algebra.full_space();
        loop {
            let next = self.algebra.normal_closure_in(&ambient, t);
            if next == ambient {
                return &next == t;
            }
            ambient = next;
        }
    }

    /// `v(A)`: the largest `k − s(C_k)` (or `k` when `s = 0`) over upper chains.
    pub fn invariance_number(&self) -> InvarianceReport {
        self.invariance_at(self.top())
    }

    /// `v(U)` for a subalgebra `U`, with subinvariance taken inside `U`.
    pub fn invariance_number_of(&self, u: &GradedSubspace) -> Result<InvarianceReport> {
        Ok(self.invariance_at(self.require_subalgebra(u)?))
    }

    fn invariance_at(&self, root: usize) -> InvarianceReport {
        let reach = self.chain_search(root);
        // Either branch of the definition equals the number of chain members
        // that are not subinvariant, so a longest weighted path suffices.
        let weight = |k: usize| usize::from(reach[k].is_none());
        let mut best: Vec<Option<(usize, Option<usize>)>> = vec![None; self.subalgebras.len()];
        let mut order: Vec<usize> = self.below[root].clone();
        order.push(root);
        order.sort_by_key(|&k| self.sub(k).dim());
        for &t in &order {
            let mut entry = (0, None);
            for &c in &self.covers[t] {
                let value = weight(c) + best[c].expect("covers are smaller").0;
                if value > entry.0 {
                    entry = (value, Some(c));
                }
            }
            best[t] = Some(entry);
        }
        let (v, mut next) = best[root].expect("root visited");
        let mut chain = Vec::new();
        let mut subinvariant_members = 0;
        while let Some(c) = next {
            chain.push(self.sub(c).clone());
            subinvariant_members += 1 - weight(c);
            next = best[c].expect("visited").1;
        }
        InvarianceReport {
            v,
            chain,
            subinvariant_members,
        }
    }
}
