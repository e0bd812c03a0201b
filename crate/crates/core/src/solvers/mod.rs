//! Set cover solvers. The deterministic ones (greedy, greedy with
//! withdrawals) return a [`CoverRun`] with per-element prices; the
//! evolutionary ones return a [`RunResult`] driven by an [`EaConfig`].

pub mod ea;
pub mod gaww;
pub mod greedy;
pub mod opo;
pub mod seip;
pub mod semo;
pub mod trace;

pub use ea::{Acceptance, EaConfig, Initialization, RunResult, TraceLevel};
pub use gaww::{gaww_solve, GawwConfig};
pub use greedy::greedy_solve;
pub use opo::opo_ea_run;
pub use seip::{replay_seip, seip_run, superior, SeipPopulation};
pub use semo::{dominate, semo_run, SemoArchive};
pub use trace::{TraceEvent, TraceRecord};

use crate::instance::{ElementSet, SetCoverInstance};
use crate::solution::Solution;
use crate::weight::{Rational, Weight};

/// Price paid for each element, assigned once when it is first covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriceMap<W> {
    prices: Vec<Option<W>>,
}

impl<W: Weight> PriceMap<W> {
    pub fn new(n: usize) -> Self {
        Self {
            prices: vec![None; n],
        }
    }

    /// Records the price of element `e` (1-based). Returns false if the
    /// element was already priced.
    pub fn assign(&mut self, e: usize, price: W) -> bool {
        let slot = &mut self.prices[e - 1];
        if slot.is_some() {
            return false;
        }
        *slot = Some(price);
        true
    }

    pub fn get(&self, e: usize) -> Option<&W> {
        self.prices.get(e.wrapping_sub(1)).and_then(|p| p.as_ref())
    }

    pub fn n(&self) -> usize {
        self.prices.len()
    }

    pub fn is_complete(&self) -> bool {
        self.prices.iter().all(Option::is_some)
    }

    /// `(element, price)` pairs in element order, priced elements only.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &W)> + '_ {
        self.prices
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.as_ref().map(|p| (i + 1, p)))
    }

    pub fn total(&self) -> W {
        let mut acc = W::zero();
        for (_, p) in self.iter() {
            acc += p;
        }
        acc
    }

    pub fn to_rational(&self) -> PriceMap<Rational> {
        PriceMap {
            prices: self.prices.iter().map(|p| p.as_ref().map(Weight::to_rational)).collect(),
        }
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, W)>) -> Self {
        let mut map = Self::new(n);
        for (e, p) in entries {
            map.prices[e - 1] = Some(p);
        }
        map
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Greedy,
    Withdrawal,
}

/// One iteration of greedy or greedy-with-withdrawals.
#[derive(Clone, Debug)]
pub struct CoverStep<W> {
    pub kind: StepKind,
    /// Sets added in this step (the chosen set, or the withdrawal's `Q`).
    pub added: Vec<usize>,
    pub removed: Option<usize>,
    /// Elements covered for the first time, ascending.
    pub newly_covered: Vec<usize>,
    /// Price assigned to each newly covered element.
    pub price: W,
    /// Covered elements `R` before the step.
    pub covered_before: ElementSet,
    /// Selection after the step.
    pub selection: Solution,
    /// Cost of the selection after the step.
    pub cost: W,
}

/// Output of a deterministic cover construction.
#[derive(Clone, Debug)]
pub struct CoverRun<W> {
    pub solution: Solution,
    pub cost: W,
    pub prices: PriceMap<W>,
    pub steps: Vec<CoverStep<W>>,
}

impl<W: Weight> CoverRun<W> {
    pub fn withdrawals(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Withdrawal).count()
    }

    /// Trace records, one per step, in the common tabular layout.
    pub fn trace(&self, inst: &SetCoverInstance<W>) -> Vec<TraceRecord<W>> {
        let mut records = Vec::with_capacity(self.steps.len() + 1);
        records.push(TraceRecord {
            step: 0,
            event: TraceEvent::Init,
            parent_cardinality: None,
            cardinality: 0,
            cost: W::zero(),
            solution: inst.empty_solution(),
            digest: 0,
        });
        let mut before = 0;
        for (i, s) in self.steps.iter().enumerate() {
            let card = s.covered_before.len() + s.newly_covered.len();
            records.push(TraceRecord {
                step: i as u64 + 1,
                event: match s.kind {
                    StepKind::Greedy => TraceEvent::Greedy,
                    StepKind::Withdrawal => TraceEvent::Withdrawal,
                },
                parent_cardinality: Some(before),
                cardinality: card,
                cost: s.cost.clone(),
                solution: s.selection.clone(),
                digest: 0,
            });
            before = card;
        }
        records
    }

    /// Steps after which the selected sets are pairwise disjoint. A
    /// diagnostic only; nothing requires it on arbitrary inputs.
    pub fn disjoint_steps(&self, inst: &SetCoverInstance<W>) -> usize {
        self.steps
            .iter()
            .filter(|s| {
                let mut seen = ElementSet::empty(inst.n());
                s.selection.ones().all(|i| {
                    let ok = seen.is_disjoint(inst.mask(i));
                    seen.union_with(inst.mask(i));
                    ok
                })
            })
            .count()
    }
}
