use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::isolation::IsolationFunction;
use crate::solution::Solution;
use crate::weight::Weight;

use super::ea::{EaConfig, RunResult, TraceLevel};
use super::trace::{Fnv, TraceEvent, TraceRecord};

/// `superior(x, y)`: same isolation cardinality, and `x` is cheaper, or
/// equally expensive with fewer sets.
pub fn superior<W: Weight>(
    x: &Solution,
    y: &Solution,
    inst: &SetCoverInstance<W>,
    iso: &IsolationFunction,
) -> Result<bool> {
    if iso.cardinality(inst, x)? != iso.cardinality(inst, y)? {
        return Ok(false);
    }
    let (cx, cy) = (inst.cost(x)?, inst.cost(y)?);
    Ok(cx < cy || (cx == cy && x.count() < y.count()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resident<W> {
    pub solution: Solution,
    pub cost: W,
    pub size: usize,
}

impl<W: Weight> Resident<W> {
    fn is_superior_to(&self, cost: &W, size: usize) -> bool {
        self.cost < *cost || (self.cost == *cost && self.size < size)
    }
}

/// One resident per isolation cardinality `0..=q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeipPopulation<W> {
    slots: Vec<Option<Resident<W>>>,
    /// Occupied cardinalities in order of first occupation; used for
    /// uniform parent selection.
    occupied: Vec<usize>,
}

impl<W: Weight> SeipPopulation<W> {
    /// The initial population `{x^∅}`.
    pub fn new(q: usize, m: usize) -> Self {
        let mut slots = vec![None; q + 1];
        slots[0] = Some(Resident {
            solution: Solution::empty(m),
            cost: W::zero(),
            size: 0,
        });
        Self {
            slots,
            occupied: vec![0],
        }
    }

    pub fn q(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn get(&self, cardinality: usize) -> Option<&Resident<W>> {
        self.slots.get(cardinality).and_then(Option::as_ref)
    }

    /// `(cardinality, resident)` in ascending cardinality.
    pub fn residents(&self) -> impl Iterator<Item = (usize, &Resident<W>)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    /// The feasible resident (cardinality `q`), if any.
    pub fn best_feasible(&self) -> Option<&Resident<W>> {
        self.get(self.q())
    }

    /// Inserts unless the resident of that cardinality is superior; on a
    /// tie the newcomer wins. Returns whether it was inserted.
    pub fn offer(&mut self, cardinality: usize, x: &Solution, cost: W) -> bool {
        let size = x.count();
        match &mut self.slots[cardinality] {
            Some(r) if r.is_superior_to(&cost, size) => false,
            Some(r) => {
                r.solution.copy_from(x);
                r.cost = cost;
                r.size = size;
                true
            }
            slot @ None => {
                *slot = Some(Resident {
                    solution: x.clone(),
                    cost,
                    size,
                });
                self.occupied.push(cardinality);
                true
            }
        }
    }

    fn pick(&self, rng: &mut crate::rng::Rng) -> usize {
        self.occupied[rng.index(self.occupied.len())]
    }

    pub fn digest(&self) -> u64 {
        let mut h = Fnv::default();
        for (i, r) in self.residents() {
            h.write_u64(i as u64);
            h.write_solution(&r.solution);
        }
        h.finish()
    }
}

/// SEIP from `x^∅`. One-bit mutation gives LSEIP, bit-wise gives GSEIP.
pub fn seip_run<W: Weight>(
    inst: &SetCoverInstance<W>,
    iso: &IsolationFunction,
    cfg: &EaConfig,
) -> Result<RunResult<W>> {
    let (run, _) = seip_run_with_population(inst, iso, cfg)?;
    Ok(run)
}

/// As [`seip_run`], also returning the final population.
pub fn seip_run_with_population<W: Weight>(
    inst: &SetCoverInstance<W>,
    iso: &IsolationFunction,
    cfg: &EaConfig,
) -> Result<(RunResult<W>, SeipPopulation<W>)> {
    let n = inst.n();
    cfg.validate(inst.m())?;
    let mut rng = cfg.rng();
    let mut pop = SeipPopulation::new(iso.q(), inst.m());
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
            digest: pop.digest(),
        });
    }

    let mut child = inst.empty_solution();
    for step in 1..=cfg.budget {
        let parent_cardinality = pop.pick(&mut rng);
        child.copy_from(&pop.slots[parent_cardinality].as_ref().expect("occupied").solution);
        cfg.mutation.apply_in_place(&mut child, &mut rng);
        let (cost, covered) = inst.evaluate(&child, &mut scratch);
        let cardinality = iso.cardinality_from_covered(covered, n);
        let recorded = match cfg.trace {
            TraceLevel::Off => None,
            _ => Some(cost.clone()),
        };
        let accept = pop.offer(cardinality, &child, cost);
        if let Some(cost) = recorded {
            if accept || cfg.trace == TraceLevel::Full {
                trace.push(TraceRecord {
                    step,
                    event: if accept { TraceEvent::Accept } else { TraceEvent::Reject },
                    parent_cardinality: Some(parent_cardinality),
                    cardinality,
                    cost,
                    solution: child.clone(),
                    digest: pop.digest(),
                });
            }
        }
    }

    let best = pop.best_feasible();
    let population = pop
        .residents()
        .map(|(_, r)| (r.solution.clone(), r.cost.clone()))
        .collect();
    Ok((
        RunResult {
            best_feasible: best.map(|r| r.solution.clone()),
            best_cost: best.map(|r| r.cost.clone()),
            steps_used: cfg.budget,
            trace,
            seed: cfg.seed,
            population,
        },
        pop,
    ))
}

/// Rebuilds the final population from a trace holding the initial record
/// and at least every accepted offspring. Costs and cardinalities are
/// recomputed from `inst` and checked against the recorded ones.
pub fn replay_seip<W: Weight>(
    inst: &SetCoverInstance<W>,
    iso: &IsolationFunction,
    trace: &[TraceRecord<W>],
) -> Result<SeipPopulation<W>> {
    let mut pop = SeipPopulation::new(iso.q(), inst.m());
    for r in trace {
        let card = iso.cardinality(inst, &r.solution)?;
        let cost = inst.cost(&r.solution)?;
        if card != r.cardinality || cost != r.cost {
            return Err(Error::InvalidArgument(format!(
                "trace step {} does not match the instance",
                r.step
            )));
        }
        match r.event {
            TraceEvent::Init => {
                if r.solution.count() != 0 {
                    return Err(Error::InvalidArgument("SEIP starts from the empty solution".into()));
                }
            }
            TraceEvent::Accept => {
                if !pop.offer(card, &r.solution, cost) {
                    return Err(Error::InvalidArgument(format!(
                        "trace step {} accepts an offspring the population rejects",
                        r.step
                    )));
                }
            }
            TraceEvent::Reject => {}
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unexpected {} record in a SEIP trace",
                    other.as_str()
                )))
            }
        }
    }
    Ok(pop)
}
