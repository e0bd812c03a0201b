use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mutation::Mutation;
use crate::rng::Rng;
use crate::solution::Solution;
use crate::weight::{Rational, Weight};

use super::trace::TraceRecord;

/// Replacement rule of the (1+1)-EA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Acceptance {
    /// Replace iff the offspring is feasible and no more expensive.
    Literal,
    /// Minimize `cost + n·w_max·(uncovered elements)`, replacing on `<=`.
    Penalty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Initialization {
    Empty,
    /// Every bit set with probability 1/2.
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TraceLevel {
    #[default]
    Off,
    /// Initial record plus accepted offspring.
    Accepted,
    /// One record per step.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaConfig {
    pub mutation: Mutation,
    /// Number of mutation + evaluation iterations.
    pub budget: u64,
    pub seed: u64,
    /// Only used by the (1+1)-EA.
    pub acceptance: Acceptance,
    /// Only used by the (1+1)-EA; SEMO and SEIP always start from `x^∅`.
    pub initialization: Initialization,
    pub trace: TraceLevel,
}

impl EaConfig {
    pub fn new(mutation: Mutation, budget: u64, seed: u64) -> Self {
        Self {
            mutation,
            budget,
            seed,
            acceptance: Acceptance::Penalty,
            initialization: Initialization::Empty,
            trace: TraceLevel::Off,
        }
    }

    pub fn with_trace(mut self, trace: TraceLevel) -> Self {
        self.trace = trace;
        self
    }

    pub fn with_acceptance(mut self, acceptance: Acceptance) -> Self {
        self.acceptance = acceptance;
        self
    }

    pub fn with_initialization(mut self, init: Initialization) -> Self {
        self.initialization = init;
        self
    }

    pub(crate) fn validate(&self, m: usize) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidArgument("budget must be at least 1".into()));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("mutation needs at least one set".into()));
        }
        Ok(())
    }

    pub(crate) fn rng(&self) -> Rng {
        Rng::new(self.seed)
    }
}

/// Outcome of an evolutionary run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult<W> {
    pub best_feasible: Option<Solution>,
    pub best_cost: Option<W>,
    pub steps_used: u64,
    pub trace: Vec<TraceRecord<W>>,
    pub seed: u64,
    /// Final population (archive, or the single current solution) with costs.
    pub population: Vec<(Solution, W)>,
}

impl<W: Weight> RunResult<W> {
    /// Converts costs to rationals, dividing by the scale factor of a
    /// rescaled instance.
    pub fn to_rational(&self, scale: &BigInt) -> RunResult<Rational> {
        let s = Rational::from_integer(scale.clone());
        RunResult {
            best_feasible: self.best_feasible.clone(),
            best_cost: self.best_cost.as_ref().map(|c| c.to_rational() / &s),
            steps_used: self.steps_used,
            trace: self.trace.iter().map(|r| r.to_rational(scale)).collect(),
            seed: self.seed,
            population: self
                .population
                .iter()
                .map(|(x, c)| (x.clone(), c.to_rational() / &s))
                .collect(),
        }
    }
}

/// Keeps the cheapest feasible solution seen; earlier wins on ties.
#[derive(Debug)]
pub(crate) struct BestFeasible<W> {
    pub solution: Option<Solution>,
    pub cost: Option<W>,
}

impl<W: Weight> BestFeasible<W> {
    pub fn new() -> Self {
        Self {
            solution: None,
            cost: None,
        }
    }

    #[inline]
    pub fn offer(&mut self, x: &Solution, cost: &W) {
        if self.cost.as_ref().map_or(true, |c| cost < c) {
            self.cost = Some(cost.clone());
            match &mut self.solution {
                Some(s) => s.copy_from(x),
                None => self.solution = Some(x.clone()),
            }
        }
    }
}
