use std::fmt;
use std::str::FromStr;

use seip_core::analysis::exact_solve_with_limit;
use seip_core::closure::extend_closure;
use seip_core::solvers::trace::{TraceEvent, TraceRecord};
use seip_core::solvers::{
    gaww_solve, greedy_solve, opo_ea_run, seip_run, semo_run, Acceptance, CoverRun, EaConfig,
    GawwConfig, Initialization, RunResult, TraceLevel,
};
use seip_core::{
    Instance, IsolationFunction, IsolationKind, Mutation, Rational, SetCoverInstance, Solution,
    Weight,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    Gaww,
    OpoEa,
    Semo,
    Lseip,
    Gseip,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Greedy,
        Algorithm::Gaww,
        Algorithm::OpoEa,
        Algorithm::Semo,
        Algorithm::Lseip,
        Algorithm::Gseip,
        Algorithm::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Gaww => "gaww",
            Algorithm::OpoEa => "opo-ea",
            Algorithm::Semo => "semo",
            Algorithm::Lseip => "lseip",
            Algorithm::Gseip => "gseip",
            Algorithm::Exact => "exact",
        }
    }

    /// Seeded algorithms need `--seed` and `--budget`.
    pub fn is_evolutionary(self) -> bool {
        matches!(
            self,
            Algorithm::OpoEa | Algorithm::Semo | Algorithm::Lseip | Algorithm::Gseip
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!(
                    "unknown algorithm {s:?} (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Per-algorithm settings; fields that do not apply are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmOptions {
    /// Mutation for `opo-ea` and `semo`; SEIP variants fix their own.
    pub mutation: Mutation,
    pub isolation: IsolationKind,
    pub acceptance: Acceptance,
    pub initialization: Initialization,
    /// Run on the subset-closure of the instance.
    pub extend: bool,
    pub oracle_limit: usize,
}

impl Default for AlgorithmOptions {
    fn default() -> Self {
        Self {
            mutation: Mutation::BitWise,
            isolation: IsolationKind::CoveredElements,
            acceptance: Acceptance::Penalty,
            initialization: Initialization::Empty,
            extend: false,
            oracle_limit: seip_core::analysis::DEFAULT_ORACLE_LIMIT,
        }
    }
}

pub struct Outcome {
    /// The instance actually solved (the closure when `extend` is set).
    pub instance: Instance,
    pub solution: Option<Solution>,
    pub cost: Option<Rational>,
    pub steps_used: u64,
    pub trace: Vec<TraceRecord<Rational>>,
    pub cover_run: Option<CoverRun<Rational>>,
}

pub struct RunRequest {
    pub algorithm: Algorithm,
    pub options: AlgorithmOptions,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub trace: TraceLevel,
}

fn run_ea<W: Weight>(
    inst: &SetCoverInstance<W>,
    req: &RunRequest,
    cfg: &EaConfig,
) -> CliResult<RunResult<W>> {
    let iso = IsolationFunction::of_kind(req.options.isolation, inst);
    Ok(match req.algorithm {
        Algorithm::OpoEa => opo_ea_run(inst, cfg)?,
        Algorithm::Semo => semo_run(inst, cfg)?,
        Algorithm::Lseip => seip_run(
            inst,
            &iso,
            &EaConfig {
                mutation: Mutation::OneBit,
                ..cfg.clone()
            },
        )?,
        Algorithm::Gseip => seip_run(
            inst,
            &iso,
            &EaConfig {
                mutation: Mutation::BitWise,
                ..cfg.clone()
            },
        )?,
        _ => unreachable!("not an evolutionary algorithm"),
    })
}

pub fn run_algorithm(inst: &Instance, req: &RunRequest) -> CliResult<Outcome> {
    let instance = if req.options.extend {
        extend_closure(inst)?
    } else {
        inst.clone()
    };
    let cover = |run: CoverRun<Rational>, instance: Instance| {
        let trace = if req.trace == TraceLevel::Off {
            Vec::new()
        } else {
            run.trace(&instance)
        };
        Outcome {
            solution: Some(run.solution.clone()),
            cost: Some(run.cost.clone()),
            steps_used: run.steps.len() as u64,
            trace,
            cover_run: Some(run),
            instance,
        }
    };
    match req.algorithm {
        Algorithm::Greedy => {
            let run = greedy_solve(&instance);
            Ok(cover(run, instance))
        }
        Algorithm::Gaww => {
            let run = gaww_solve(&instance, &GawwConfig::for_instance(&instance))?;
            Ok(cover(run, instance))
        }
        Algorithm::Exact => {
            let (cost, x) = exact_solve_with_limit(&instance, req.options.oracle_limit)?;
            let trace = if req.trace == TraceLevel::Off {
                Vec::new()
            } else {
                let covered = instance.covered(&x)?.len();
                vec![
                    TraceRecord {
                        step: 0,
                        event: TraceEvent::Init,
                        parent_cardinality: None,
                        cardinality: 0,
                        cost: Rational::from_integer(0.into()),
                        solution: instance.empty_solution(),
                        digest: 0,
                    },
                    TraceRecord {
                        step: 1,
                        event: TraceEvent::Accept,
                        parent_cardinality: Some(0),
                        cardinality: covered,
                        cost: cost.clone(),
                        solution: x.clone(),
                        digest: 0,
                    },
                ]
            };
            Ok(Outcome {
                instance,
                solution: Some(x),
                cost: Some(cost),
                steps_used: 0,
                trace,
                cover_run: None,
            })
        }
        alg => {
            let (Some(seed), Some(budget)) = (req.seed, req.budget) else {
                return Err(CliError::usage(format!(
                    "{alg} needs both a seed and a budget"
                )));
            };
            let cfg = EaConfig {
                mutation: req.options.mutation,
                budget,
                seed,
                acceptance: req.options.acceptance,
                initialization: req.options.initialization,
                trace: req.trace,
            };
            // Integer weights are much faster; fall back to exact rationals
            // when the rescaled weights would not fit.
            let run = match instance.scaled::<i128>() {
                Some((scaled, d)) => run_ea(&scaled, req, &cfg)?.to_rational(&d),
                None => run_ea(&instance, req, &cfg)?,
            };
            Ok(Outcome {
                instance,
                solution: run.best_feasible,
                cost: run.best_cost,
                steps_used: run.steps_used,
                trace: run.trace,
                cover_run: None,
            })
        }
    }
}
