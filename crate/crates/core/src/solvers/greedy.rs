use crate::instance::{ElementSet, SetCoverInstance};
use crate::solution::Solution;
use crate::weight::ExactWeight;

use super::{CoverRun, CoverStep, PriceMap, StepKind};

/// Index and ratio `w(S) / |S - R|` of the cheapest useful set, lowest
/// index on ties. `None` once nothing is left to cover.
pub(crate) fn cheapest_set<W: ExactWeight>(
    inst: &SetCoverInstance<W>,
    covered: &ElementSet,
) -> Option<(usize, W)> {
    let mut best: Option<(usize, W)> = None;
    for i in 0..inst.m() {
        let fresh = inst.mask(i).difference_count(covered);
        if fresh == 0 {
            continue;
        }
        let r = inst.weight(i).clone() / W::from_u64(fresh as u64);
        if best.as_ref().map_or(true, |(_, b)| r < *b) {
            best = Some((i, r));
        }
    }
    best
}

/// Classic greedy: repeatedly take the set with the smallest cost per newly
/// covered element and charge that cost to each of those elements.
pub fn greedy_solve<W: ExactWeight>(inst: &SetCoverInstance<W>) -> CoverRun<W> {
    let mut covered = ElementSet::empty(inst.n());
    let mut selection = inst.empty_solution();
    let mut cost = W::zero();
    let mut prices = PriceMap::new(inst.n());
    let mut steps = Vec::new();
    while !covered.is_full() {
        let (chosen, ratio) =
            cheapest_set(inst, &covered).expect("validated instances are coverable");
        let fresh = inst.mask(chosen).difference(&covered);
        for e in fresh.elements() {
            prices.assign(e, ratio.clone());
        }
        let before = covered.clone();
        covered.union_with(&fresh);
        selection.insert(chosen);
        cost += inst.weight(chosen);
        steps.push(CoverStep {
            kind: StepKind::Greedy,
            added: vec![chosen],
            removed: None,
            newly_covered: fresh.to_vec(),
            price: ratio,
            covered_before: before,
            selection: selection.clone(),
            cost: cost.clone(),
        });
    }
    CoverRun {
        solution: selection,
        cost,
        prices,
        steps,
    }
}

/// The selection greedy would make, without bookkeeping.
pub fn greedy_selection<W: ExactWeight>(inst: &SetCoverInstance<W>) -> Solution {
    greedy_solve(inst).solution
}
