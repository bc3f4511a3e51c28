use super::LatticeCatalog;
use crate::linalg::GradedSubspace;

impl LatticeCatalog {
    fn intersect_all<'a>(
        &self,
        spaces: impl IntoIterator<Item = &'a GradedSubspace>,
    ) -> GradedSubspace {
        spaces
            .into_iter()
            .fold(self.algebra.full_space(), |acc, u| {
                acc.intersect(u).expect("same ambient")
            })
    }

    /// Intersection of all maximal subalgebras; `A` when there are none.
    pub fn frattini(&self) -> GradedSubspace {
        self.intersect_all(self.maximal_subalgebras())
    }

    /// Largest ideal of `A` inside `F(A)`: the sum of all such ideals.
    pub fn phi(&self) -> GradedSubspace {
        let f = self.frattini();
        self.ideals()
            .filter(|i| f.contains_subspace(i).expect("same ambient"))
            .fold(self.algebra.zero_space(), |acc, i| {
                acc.sum(i).expect("same ambient")
            })
    }

    pub fn frattini_phi(&self) -> (GradedSubspace, GradedSubspace) {
        (self.frattini(), self.phi())
    }

    /// Intersection of all maximal ideals; `A` when there are none.
    pub fn jacobson(&self) -> GradedSubspace {
        self.intersect_all(self.maximal_ideals())
    }

    /// Intersection of every ideal containing `s`.
    pub fn closure_oracle(&self, s: &GradedSubspace) -> GradedSubspace {
        self.intersect_all(
            self.ideals()
                .filter(|i| i.contains_subspace(s).expect("same ambient")),
        )
    }
}
