use crate::error::Result;
use crate::instance::SetCoverInstance;
use crate::solution::Solution;
use crate::weight::Weight;

use super::ea::{BestFeasible, EaConfig, RunResult, TraceLevel};
use super::trace::{Fnv, TraceEvent, TraceRecord};

/// Objective vector of a SEMO member: `(f1, f2, |x|)` with `f1` the cost
/// and `f2` the number of uncovered elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objectives<W> {
    pub cost: W,
    pub uncovered: usize,
    pub size: usize,
}

/// The three dominance rules of SEMO, verbatim:
/// 1. `f1(x) < f1(y)` and `f2(x) <= f2(y)`;
/// 2. `f1(x) <= f1(y)` and `f2(x) < f2(y)`;
/// 3. equal objectives and `|x| < |y|`.
pub fn dominate<W: Weight>(x: &Objectives<W>, y: &Objectives<W>) -> bool {
    (x.cost < y.cost && x.uncovered <= y.uncovered)
        || (x.cost <= y.cost && x.uncovered < y.uncovered)
        || (x.cost == y.cost && x.uncovered == y.uncovered && x.size < y.size)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemoMember<W> {
    pub solution: Solution,
    pub objectives: Objectives<W>,
}

/// Mutually non-dominated archive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemoArchive<W> {
    members: Vec<SemoMember<W>>,
}

impl<W: Weight> SemoArchive<W> {
    pub fn new(inst: &SetCoverInstance<W>) -> Self {
        Self {
            members: vec![SemoMember {
                solution: inst.empty_solution(),
                objectives: Objectives {
                    cost: W::zero(),
                    uncovered: inst.n(),
                    size: 0,
                },
            }],
        }
    }

    pub fn members(&self) -> &[SemoMember<W>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Solution) -> bool {
        self.members.iter().any(|m| &m.solution == x)
    }

    /// Inserts `x` unless some member dominates it, evicting the members
    /// it dominates. Re-inserting a present solution changes nothing.
    /// Returns whether the archive changed.
    pub fn offer(&mut self, x: &Solution, obj: Objectives<W>) -> bool {
        if self
            .members
            .iter()
            .any(|m| dominate(&m.objectives, &obj) || &m.solution == x)
        {
            return false;
        }
        self.members.retain(|m| !dominate(&obj, &m.objectives));
        self.members.push(SemoMember {
            solution: x.clone(),
            objectives: obj,
        });
        true
    }

    /// True when no member dominates another.
    pub fn is_mutually_non_dominated(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !dominate(&a.objectives, &b.objectives))
        })
    }

    fn digest(&self) -> u64 {
        let mut h = Fnv::default();
        for m in &self.members {
            h.write_solution(&m.solution);
        }
        h.finish()
    }
}

/// SEMO minimizing `(cost, uncovered)` from `x^∅`.
pub fn semo_run<W: Weight>(inst: &SetCoverInstance<W>, cfg: &EaConfig) -> Result<RunResult<W>> {
    let (run, _) = semo_run_with_archive(inst, cfg)?;
    Ok(run)
}

/// As [`semo_run`], also returning the final archive.
pub fn semo_run_with_archive<W: Weight>(
    inst: &SetCoverInstance<W>,
    cfg: &EaConfig,
) -> Result<(RunResult<W>, SemoArchive<W>)> {
    let n = inst.n();
    cfg.validate(inst.m())?;
    let mut rng = cfg.rng();
    let mut archive = SemoArchive::new(inst);
    let mut best = BestFeasible::new();
    let mut scratch = Vec::new();
    let mut trace = Vec::new();
    if cfg.trace != TraceLevel::Off {
        trace.push(TraceRecord {
            step: 0,
            event: TraceEvent::Init,
            parent_cardinality: None,
            cardinality: 0,
            cost: W::zero(),
            solution: inst.empty_solution(),
            digest: archive.digest(),
        });
    }

    let mut child = inst.empty_solution();
    for step in 1..=cfg.budget {
        let parent = &archive.members[rng.index(archive.len())];
        let parent_cardinality = n - parent.objectives.uncovered;
        child.copy_from(&parent.solution);
        cfg.mutation.apply_in_place(&mut child, &mut rng);
        let (cost, covered) = inst.evaluate(&child, &mut scratch);
        if covered == n {
            best.offer(&child, &cost);
        }
        let obj = Objectives {
            cost: cost.clone(),
            uncovered: n - covered,
            size: child.count(),
        };
        let accept = archive.offer(&child, obj);
        if cfg.trace == TraceLevel::Full || (accept && cfg.trace == TraceLevel::Accepted) {
            trace.push(TraceRecord {
                step,
                event: if accept { TraceEvent::Accept } else { TraceEvent::Reject },
                parent_cardinality: Some(parent_cardinality),
                cardinality: covered,
                cost,
                solution: child.clone(),
                digest: archive.digest(),
            });
        }
    }

    let population = archive
        .members
        .iter()
        .map(|m| (m.solution.clone(), m.objectives.cost.clone()))
        .collect();
    Ok((
        RunResult {
            best_feasible: best.solution,
            best_cost: best.cost,
            steps_used: cfg.budget,
            trace,
            seed: cfg.seed,
            population,
        },
        archive,
    ))
}
