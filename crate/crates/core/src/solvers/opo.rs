use crate::error::Result;
use crate::instance::SetCoverInstance;
use crate::solution::Solution;
use crate::weight::Weight;

use super::ea::{Acceptance, BestFeasible, EaConfig, Initialization, RunResult, TraceLevel};
use super::trace::{Fnv, TraceEvent, TraceRecord};

/// Penalized fitness `cost + n·w_max·uncovered`. Any multiplier of at least
/// `n·w_max` makes coverage lexicographically dominant.
fn penalized<W: Weight>(cost: &W, uncovered: usize, unit: &W) -> W {
    cost.clone() + unit.clone() * W::from_u64(uncovered as u64)
}

fn digest(x: &Solution) -> u64 {
    let mut h = Fnv::default();
    h.write_solution(x);
    h.finish()
}

/// The (1+1)-EA. In `literal` mode the current solution is replaced only by
/// feasible offspring that cost no more; in `penalty` mode the penalized
/// fitness is minimized with replace-on-`<=`. Either way the cheapest
/// feasible offspring ever evaluated is reported.
pub fn opo_ea_run<W: Weight>(inst: &SetCoverInstance<W>, cfg: &EaConfig) -> Result<RunResult<W>> {
    let m = inst.m();
    let n = inst.n();
    cfg.validate(m)?;
    let mut rng = cfg.rng();
    let unit = W::from_u64(n as u64) * inst.max_weight().clone();
    let mut scratch = Vec::new();

    let mut x = inst.empty_solution();
    if cfg.initialization == Initialization::Random {
        for i in 0..m {
            if rng.one_in(2) {
                x.insert(i);
            }
        }
    }
    let (mut cost, mut covered) = inst.evaluate(&x, &mut scratch);
    let mut fitness = penalized(&cost, n - covered, &unit);
    let mut best = BestFeasible::new();
    if covered == n {
        best.offer(&x, &cost);
    }

    let mut trace = Vec::new();
    if cfg.trace != TraceLevel::Off {
        trace.push(TraceRecord {
            step: 0,
            event: TraceEvent::Init,
            parent_cardinality: None,
            cardinality: covered,
            cost: cost.clone(),
            solution: x.clone(),
            digest: digest(&x),
        });
    }

    let mut child = x.clone();
    for step in 1..=cfg.budget {
        child.copy_from(&x);
        cfg.mutation.apply_in_place(&mut child, &mut rng);
        let (c_cost, c_covered) = inst.evaluate(&child, &mut scratch);
        let feasible = c_covered == n;
        if feasible {
            best.offer(&child, &c_cost);
        }
        let c_fitness = penalized(&c_cost, n - c_covered, &unit);
        let accept = match cfg.acceptance {
            Acceptance::Literal => feasible && c_cost <= cost,
            Acceptance::Penalty => c_fitness <= fitness,
        };
        let parent_cardinality = covered;
        if accept {
            x.copy_from(&child);
            cost = c_cost.clone();
            covered = c_covered;
            fitness = c_fitness;
        }
        if cfg.trace == TraceLevel::Full || (accept && cfg.trace == TraceLevel::Accepted) {
            trace.push(TraceRecord {
                step,
                event: if accept { TraceEvent::Accept } else { TraceEvent::Reject },
                parent_cardinality: Some(parent_cardinality),
                cardinality: c_covered,
                cost: c_cost,
                solution: child.clone(),
                digest: digest(&x),
            });
        }
    }

    Ok(RunResult {
        best_feasible: best.solution,
        best_cost: best.cost,
        steps_used: cfg.budget,
        trace,
        seed: cfg.seed,
        population: vec![(x, cost)],
    })
}
