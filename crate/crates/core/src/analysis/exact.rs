use crate::error::{Error, Result};
use crate::instance::{ElementSet, SetCoverInstance};
use crate::solution::Solution;
use crate::weight::Weight;

/// Largest `m` the oracle accepts by default.
pub const DEFAULT_ORACLE_LIMIT: usize = 24;

/// Minimum-cost cover by exhaustive branch and bound, refusing instances
/// with more than [`DEFAULT_ORACLE_LIMIT`] sets.
pub fn exact_solve<W: Weight>(inst: &SetCoverInstance<W>) -> Result<(W, Solution)> {
    exact_solve_with_limit(inst, DEFAULT_ORACLE_LIMIT)
}

/// Branches on `x_1, x_2, ...` trying `0` before `1`, so leaves are visited
/// in lexicographic order. A branch is cut when its cost reaches the
/// incumbent or when the remaining sets cannot finish the cover. Among
/// optimal covers the lexicographically smallest is returned.
pub fn exact_solve_with_limit<W: Weight>(
    inst: &SetCoverInstance<W>,
    limit: usize,
) -> Result<(W, Solution)> {
    let m = inst.m();
    if m > limit {
        return Err(Error::OracleRefused { m, limit });
    }
    // reach[i]: union of sets i..m
    let mut reach = vec![ElementSet::empty(inst.n()); m + 1];
    for i in (0..m).rev() {
        reach[i] = reach[i + 1].union(inst.mask(i));
    }
    let mut search = Search {
        inst,
        reach,
        best: None,
        current: inst.empty_solution(),
    };
    search.dfs(0, ElementSet::empty(inst.n()), W::zero());
    let (cost, x) = search.best.expect("validated instances are coverable");
    Ok((cost, x))
}

struct Search<'a, W> {
    inst: &'a SetCoverInstance<W>,
    reach: Vec<ElementSet>,
    best: Option<(W, Solution)>,
    current: Solution,
}

impl<W: Weight> Search<'_, W> {
    fn dfs(&mut self, i: usize, covered: ElementSet, cost: W) {
        if let Some((b, _)) = &self.best {
            if cost >= *b {
                return;
            }
        }
        if covered.is_full() {
            self.best = Some((cost, self.current.clone()));
            return;
        }
        if i == self.inst.m() || !covered.union(&self.reach[i]).is_full() {
            return;
        }
        self.dfs(i + 1, covered.clone(), cost.clone());
        // A set adding nothing only adds cost.
        if !self.inst.mask(i).is_subset(&covered) {
            self.current.insert(i);
            let next = covered.union(self.inst.mask(i));
            self.dfs(i + 1, next, cost + self.inst.weight(i).clone());
            self.current.remove(i);
        }
    }
}
