//! Greedy algorithm with withdrawals for the k-set cover problem.
//!
//! Each iteration compares the best greedy step `r_Ŝ` against the best
//! withdrawal `(S̃, Q̃)`: drop one chosen set `S̃` and add at most `k` unchosen
//! sets `Q̃`, amortizing `w(Q̃) − w(S̃)` over the newly covered elements. The
//! withdrawal wins only when `r_(S̃,Q̃) < α_k · r_Ŝ` with `α_k = 1 − 1/k³`.
//!
//! A withdrawal must keep every covered element covered, so `Q̃` has to
//! contain every element of `S̃` that no other chosen set covers. With that
//! rule the covered set `R` always equals the coverage of the selection and
//! the output is a cover.
//!
//! The search over `(S, Q)` is exact. It uses two facts: every candidate set
//! contributes a strictly positive amount to `w(Q) − ρ·|∪Q − R|` for any
//! `ρ ≤ α_k·r_Ŝ`, so partial selections can be cut as soon as that quantity
//! exceeds `w(S)`; and a set that adds nothing beyond the sets already in
//! `Q` only makes the ratio worse. Work is bounded by a per-iteration node
//! budget.

use crate::error::{Error, Result};
use crate::instance::{ElementSet, SetCoverInstance};
use crate::weight::{ExactWeight, Rational};

use super::greedy::cheapest_set;
use super::{CoverRun, CoverStep, PriceMap, StepKind};

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GawwConfig {
    /// Threshold factor `α_k` (`1 − 1/k³` by default).
    pub alpha: Rational,
    /// Largest `|Q|` considered (`k` by default).
    pub max_withdrawal_size: usize,
    /// Search nodes allowed per iteration before giving up.
    pub node_budget: u64,
}

impl GawwConfig {
    pub fn for_k(k: usize) -> Self {
        let k3 = (k as i64).pow(3);
        Self {
            alpha: crate::weight::integer(1) - crate::weight::rational(1, k3),
            max_withdrawal_size: k,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn for_instance<W>(inst: &SetCoverInstance<W>) -> Self
    where
        W: ExactWeight,
    {
        Self::for_k(inst.k())
    }
}

#[derive(Clone, Debug)]
struct Withdrawal<W> {
    ratio: W,
    removed: usize,
    added: Vec<usize>,
}

struct Search<'a, W> {
    inst: &'a SetCoverInstance<W>,
    uncovered: ElementSet,
    max_q: usize,
    nodes: u64,
    budget: u64,
    /// Current ratio to beat. Strictly below `α·r_Ŝ` until a candidate is found.
    bound: W,
    best: Option<Withdrawal<W>>,
}

impl<'a, W: ExactWeight> Search<'a, W> {
    fn better_key(&self, added: &[usize], removed: usize) -> bool {
        match &self.best {
            None => false,
            Some(b) => {
                (added.len(), added, removed) < (b.added.len(), b.added.as_slice(), b.removed)
            }
        }
    }

    /// Whether a partial selection whose value is `w(Q) − w(S) − bound·|N|`
    /// can still lead to a winner. Completions only increase the value.
    fn viable(&self, value: &W) -> bool {
        if self.best.is_some() {
            *value <= W::zero()
        } else {
            *value < W::zero()
        }
    }

    fn value(&self, q_weight: &W, s_weight: &W, fresh: usize) -> W {
        q_weight.clone() - s_weight.clone() - self.bound.clone() * W::from_u64(fresh as u64)
    }

    fn consider(&mut self, s: usize, q: &[usize], q_weight: &W, fresh: usize) {
        let ratio =
            (q_weight.clone() - self.inst.weight(s).clone()) / W::from_u64(fresh as u64);
        let mut added = q.to_vec();
        added.sort_unstable();
        let wins = match &self.best {
            None => ratio < self.bound,
            Some(_) => ratio < self.bound || (ratio == self.bound && self.better_key(&added, s)),
        };
        if wins {
            self.bound = ratio.clone();
            self.best = Some(Withdrawal {
                ratio,
                removed: s,
                added,
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        s: usize,
        candidates: &[usize],
        q: &mut Vec<usize>,
        q_weight: W,
        fresh: ElementSet,
        orphans: ElementSet,
        next: usize,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::EnumerationBudget {
                budget: self.budget,
            });
        }
        let fresh_count = fresh.len();
        if orphans.is_empty() && fresh_count > 0 {
            self.consider(s, q, &q_weight, fresh_count);
        }
        if q.len() == self.max_q {
            return Ok(());
        }
        let s_weight = self.inst.weight(s).clone();
        if let Some(orphan) = orphans.elements().next() {
            // Some set of Q must cover the first orphan.
            for &j in candidates {
                if q.contains(&j) || !self.inst.mask(j).contains(orphan) {
                    continue;
                }
                let mask = self.inst.mask(j);
                let mut fresh2 = fresh.clone();
                fresh2.union_with(&mask.intersection(&self.uncovered));
                let w2 = q_weight.clone() + self.inst.weight(j).clone();
                if !self.viable(&self.value(&w2, &s_weight, fresh2.len())) {
                    continue;
                }
                q.push(j);
                self.dfs(s, candidates, q, w2, fresh2, orphans.difference(mask), 0)?;
                q.pop();
            }
        } else {
            for (pos, &j) in candidates.iter().enumerate().skip(next) {
                if q.contains(&j) {
                    continue;
                }
                let gain = self.inst.mask(j).intersection(&self.uncovered).difference(&fresh);
                if gain.is_empty() {
                    continue;
                }
                let mut fresh2 = fresh.clone();
                fresh2.union_with(&gain);
                let w2 = q_weight.clone() + self.inst.weight(j).clone();
                if !self.viable(&self.value(&w2, &s_weight, fresh2.len())) {
                    continue;
                }
                q.push(j);
                self.dfs(s, candidates, q, w2, fresh2, orphans.clone(), pos + 1)?;
                q.pop();
            }
        }
        Ok(())
    }
}

/// Runs GAWW to completion. Ties among greedy candidates go to the lowest
/// index; ties among withdrawals go to the fewest added sets, then the
/// lexicographically smallest added indices, then the lowest withdrawn index.
pub fn gaww_solve<W: ExactWeight>(
    inst: &SetCoverInstance<W>,
    cfg: &GawwConfig,
) -> Result<CoverRun<W>> {
    let alpha = W::from_rational(&cfg.alpha).ok_or_else(|| {
        Error::InvalidArgument(format!("alpha {} not representable", cfg.alpha))
    })?;
    if alpha < W::zero() || alpha >= W::one() {
        return Err(Error::InvalidArgument(format!("alpha {} outside [0, 1)", cfg.alpha)));
    }
    let n = inst.n();
    let mut covered = ElementSet::empty(n);
    let mut selection = inst.empty_solution();
    let mut cost = W::zero();
    let mut prices = PriceMap::new(n);
    let mut steps = Vec::new();

    while !covered.is_full() {
        let (greedy_set, greedy_ratio) =
            cheapest_set(inst, &covered).expect("validated instances are coverable");
        let uncovered = ElementSet::universe(n).difference(&covered);
        let mut search = Search {
            inst,
            uncovered: uncovered.clone(),
            max_q: cfg.max_withdrawal_size,
            nodes: 0,
            budget: cfg.node_budget,
            bound: alpha.clone() * greedy_ratio.clone(),
            best: None,
        };
        let chosen: Vec<usize> = selection.ones().collect();
        for &s in &chosen {
            let mut others = ElementSet::empty(n);
            for &t in chosen.iter().filter(|&&t| t != s) {
                others.union_with(inst.mask(t));
            }
            let orphans = inst.mask(s).difference(&others);
            let reach = uncovered.union(&orphans);
            let candidates: Vec<usize> = (0..inst.m())
                .filter(|&j| j != s && !selection.contains(j))
                .filter(|&j| inst.mask(j).intersection_count(&reach) > 0)
                .collect();
            let mut q = Vec::new();
            search.dfs(
                s,
                &candidates,
                &mut q,
                W::zero(),
                ElementSet::empty(n),
                orphans,
                0,
            )?;
        }

        let before = covered.clone();
        let step = match search.best {
            None => {
                let fresh = inst.mask(greedy_set).difference(&covered);
                for e in fresh.elements() {
                    prices.assign(e, greedy_ratio.clone());
                }
                covered.union_with(&fresh);
                selection.insert(greedy_set);
                cost += inst.weight(greedy_set);
                CoverStep {
                    kind: StepKind::Greedy,
                    added: vec![greedy_set],
                    removed: None,
                    newly_covered: fresh.to_vec(),
                    price: greedy_ratio,
                    covered_before: before,
                    selection: selection.clone(),
                    cost: cost.clone(),
                }
            }
            Some(w) => {
                let mut fresh = ElementSet::empty(n);
                for &j in &w.added {
                    fresh.union_with(&inst.mask(j).difference(&covered));
                }
                for e in fresh.elements() {
                    prices.assign(e, w.ratio.clone());
                }
                covered.union_with(&fresh);
                selection.remove(w.removed);
                cost = cost - inst.weight(w.removed).clone();
                for &j in &w.added {
                    selection.insert(j);
                    cost += inst.weight(j);
                }
                CoverStep {
                    kind: StepKind::Withdrawal,
                    added: w.added,
                    removed: Some(w.removed),
                    newly_covered: fresh.to_vec(),
                    price: w.ratio,
                    covered_before: before,
                    selection: selection.clone(),
                    cost: cost.clone(),
                }
            }
        };
        debug_assert_eq!(inst.covered(&selection).unwrap(), covered);
        steps.push(step);
    }
    Ok(CoverRun {
        solution: selection,
        cost,
        prices,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::instance_from_pairs;
    use crate::solution::Solution;
    use crate::solvers::greedy_solve;
    use crate::weight::{integer, rational};

    fn e1() -> SetCoverInstance<Rational> {
        instance_from_pairs(
            3,
            "E1",
            &[(&[1, 2], integer(1)), (&[3], integer(1)), (&[1, 2, 3], rational(5, 2))],
        )
        .unwrap()
    }

    #[test]
    fn alpha_from_k() {
        assert_eq!(GawwConfig::for_k(3).alpha, rational(26, 27));
        assert_eq!(GawwConfig::for_k(2).alpha, rational(7, 8));
        assert_eq!(GawwConfig::for_k(3).max_withdrawal_size, 3);
    }

    #[test]
    fn e1_matches_greedy() {
        let inst = e1();
        let run = gaww_solve(&inst, &GawwConfig::for_instance(&inst)).unwrap();
        assert_eq!(run.cost, integer(2));
        assert_eq!(run.withdrawals(), 0);
        assert_eq!(run.solution, greedy_solve(&inst).solution);
        assert_eq!(run.prices.total(), run.cost);
    }

    #[test]
    fn first_step_is_greedy() {
        let inst = e1();
        let run = gaww_solve(&inst, &GawwConfig::for_instance(&inst)).unwrap();
        assert_eq!(run.steps[0].kind, StepKind::Greedy);
    }

    /// Greedy first takes the cheap pair {1,2}; replacing it by {1,2,3}
    /// together with the remaining element is cheaper per new element than
    /// any greedy continuation.
    #[test]
    fn takes_a_withdrawal_when_it_pays() {
        let inst = instance_from_pairs(
            4,
            "w",
            &[
                (&[1, 2], integer(1)),
                (&[1, 2, 3, 4], rational(11, 5)),
                (&[3], integer(5)),
                (&[4], integer(5)),
            ],
        )
        .unwrap();
        let cfg = GawwConfig::for_instance(&inst);
        let run = gaww_solve(&inst, &cfg).unwrap();
        assert_eq!(run.steps[0].added, vec![0]);
        assert_eq!(run.steps[1].kind, StepKind::Withdrawal);
        assert_eq!(run.steps[1].removed, Some(0));
        assert_eq!(run.steps[1].added, vec![1]);
        // (11/5 − 1) / 2 new elements
        assert_eq!(run.steps[1].price, rational(3, 5));
        assert_eq!(run.solution, Solution::from_flags(&[0, 1, 0, 0]));
        assert_eq!(run.prices.total(), run.cost);
        assert_eq!(run.cost, rational(11, 5));
        assert!(inst.is_feasible(&run.solution).unwrap());
    }

    #[test]
    fn node_budget_is_enforced() {
        let inst = instance_from_pairs(
            4,
            "w",
            &[
                (&[1, 2], integer(1)),
                (&[1, 2, 3, 4], rational(11, 5)),
                (&[3], integer(5)),
                (&[4], integer(5)),
            ],
        )
        .unwrap();
        let cfg = GawwConfig {
            node_budget: 1,
            ..GawwConfig::for_instance(&inst)
        };
        assert!(matches!(gaww_solve(&inst, &cfg), Err(Error::EnumerationBudget { .. })));
    }
}
