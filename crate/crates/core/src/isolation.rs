//! Isolation functions `μ` mapping a selection to a subset of `[q]`.
//!
//! Both kinds map exactly the feasible selections to `[q]`. The
//! covered-elements kind is linearly additive (`μ(x ∪ y) = μ(x) ∪ μ(y)`);
//! the feasibility kind only satisfies `μ(x) ∪ μ(y) ⊆ μ(x ∪ y)`, since two
//! partial covers can combine into a full one.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{ElementSet, SetCoverInstance};
use crate::solution::Solution;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsolationKind {
    /// `μ(x) = R(x)`, `q = n`.
    CoveredElements,
    /// `μ(x) = {1}` when `x` is feasible, `∅` otherwise; `q = 1`.
    Feasibility,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IsolationFunction {
    kind: IsolationKind,
    q: usize,
}

impl IsolationFunction {
    pub fn covered_elements<W: Weight>(inst: &SetCoverInstance<W>) -> Self {
        Self {
            kind: IsolationKind::CoveredElements,
            q: inst.n(),
        }
    }

    pub fn feasibility() -> Self {
        Self {
            kind: IsolationKind::Feasibility,
            q: 1,
        }
    }

    pub fn of_kind<W: Weight>(kind: IsolationKind, inst: &SetCoverInstance<W>) -> Self {
        match kind {
            IsolationKind::CoveredElements => Self::covered_elements(inst),
            IsolationKind::Feasibility => Self::feasibility(),
        }
    }

    pub fn kind(&self) -> IsolationKind {
        self.kind
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `μ(x)` as a subset of `[q]` (1-based).
    pub fn apply<W: Weight>(&self, inst: &SetCoverInstance<W>, x: &Solution) -> Result<ElementSet> {
        let covered = inst.covered(x)?;
        Ok(match self.kind {
            IsolationKind::CoveredElements => covered,
            IsolationKind::Feasibility if covered.is_full() => ElementSet::universe(1),
            IsolationKind::Feasibility => ElementSet::empty(1),
        })
    }

    /// `|μ(x)|`
    pub fn cardinality<W: Weight>(&self, inst: &SetCoverInstance<W>, x: &Solution) -> Result<usize> {
        Ok(self.apply(inst, x)?.len())
    }

    /// `|μ(x)|` from a precomputed covered-element count.
    #[inline]
    pub(crate) fn cardinality_from_covered(&self, covered: usize, n: usize) -> usize {
        match self.kind {
            IsolationKind::CoveredElements => covered,
            IsolationKind::Feasibility => (covered == n) as usize,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::instance_from_pairs;
    use crate::weight::{integer, rational, Rational};

    fn e1() -> SetCoverInstance<Rational> {
        instance_from_pairs(
            3,
            "E1",
            &[(&[1, 2], integer(1)), (&[3], integer(1)), (&[1, 2, 3], rational(5, 2))],
        )
        .unwrap()
    }

    #[test]
    fn covered_elements_kind() {
        let inst = e1();
        let mu = IsolationFunction::covered_elements(&inst);
        assert_eq!(mu.q(), 3);
        assert!(mu.apply(&inst, &Solution::empty(3)).unwrap().is_empty());
        assert_eq!(mu.apply(&inst, &Solution::from_flags(&[1, 0, 0])).unwrap().to_vec(), vec![1, 2]);
    }

    #[test]
    fn feasibility_kind() {
        let inst = e1();
        let mu = IsolationFunction::feasibility();
        assert_eq!(mu.apply(&inst, &Solution::from_flags(&[0, 0, 1])).unwrap().to_vec(), vec![1]);
        assert!(mu.apply(&inst, &Solution::from_flags(&[1, 0, 0])).unwrap().is_empty());
        assert_eq!(mu.cardinality_from_covered(3, 3), 1);
        assert_eq!(mu.cardinality_from_covered(2, 3), 0);
    }

    #[test]
    fn additivity_and_feasibility_on_all_pairs() {
        let inst = e1();
        let all: Vec<Solution> = (0..8u8)
            .map(|b| Solution::from_flags(&[b & 1, (b >> 1) & 1, (b >> 2) & 1]))
            .collect();
        let mut feasibility_breaks = 0;
        for mu in [IsolationFunction::covered_elements(&inst), IsolationFunction::feasibility()] {
            for x in &all {
                let full = mu.cardinality(&inst, x).unwrap() == mu.q();
                assert_eq!(full, inst.is_feasible(x).unwrap());
                for y in &all {
                    let lhs = mu.apply(&inst, &x.union(y)).unwrap();
                    let rhs = mu.apply(&inst, x).unwrap().union(&mu.apply(&inst, y).unwrap());
                    match mu.kind() {
                        IsolationKind::CoveredElements => assert_eq!(lhs, rhs),
                        // Two infeasible halves can form a cover, so only
                        // inclusion holds here.
                        IsolationKind::Feasibility => {
                            assert!(rhs.is_subset(&lhs));
                            feasibility_breaks += (lhs != rhs) as usize;
                        }
                    }
                }
            }
        }
        assert!(feasibility_breaks > 0);
    }
}
