//! Batch runs: every (instance, algorithm, seed) cell of a config, with
//! rows in canonical order whatever the degree of parallelism.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use seip_core::analysis::exact_solve_with_limit;
use seip_core::io::{optimum_from_json, read_instance, sidecar_path};
use seip_core::solvers::TraceLevel;
use seip_core::{Instance, Rational};
use serde::{Deserialize, Serialize};

use crate::algorithms::{run_algorithm, Algorithm, AlgorithmOptions, RunRequest};
use crate::budget::{evaluate_budget, evaluate_expression, BudgetVars};
use crate::error::{CliError, CliResult};
use crate::generate::GeneratorParams;
use crate::rows::{ResultRow, Summary, RESULT_HEADER, SUMMARY_HEADER};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceSource {
    /// Path of an instance file; a `.opt` sidecar next to it is picked up.
    File(PathBuf),
    Generate(GeneratorParams),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sources {
    One(InstanceSource),
    Many(Vec<InstanceSource>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgorithmEntry {
    Name(Algorithm),
    Configured {
        name: Algorithm,
        #[serde(default)]
        options: AlgorithmOptions,
    },
}

impl AlgorithmEntry {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmEntry::Name(a) | AlgorithmEntry::Configured { name: a, .. } => *a,
        }
    }

    pub fn options(&self) -> AlgorithmOptions {
        match self {
            AlgorithmEntry::Name(_) => AlgorithmOptions::default(),
            AlgorithmEntry::Configured { options, .. } => options.clone(),
        }
    }
}

fn default_true() -> bool {
    true
}

/// Experiment description, read from a JSON file. Relative paths are
/// resolved against the directory of that file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: Sources,
    pub algorithms: Vec<AlgorithmEntry>,
    pub runs: u64,
    #[serde(default)]
    pub base_seed: u64,
    /// Budget expression, needed when an evolutionary algorithm is listed.
    #[serde(default)]
    pub budget: Option<String>,
    /// Ratio threshold expression for the success fraction, e.g. `H(k)`.
    #[serde(default)]
    pub threshold: Option<String>,
    /// Fall back to the exact oracle when no optimum is supplied.
    #[serde(default = "default_true")]
    pub oracle: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| CliError::usage(format!("experiment config: {e}")))?;
        if cfg.algorithms.is_empty() {
            return Err(CliError::usage("experiment config lists no algorithms"));
        }
        if cfg.runs == 0 {
            return Err(CliError::usage("runs must be at least 1"));
        }
        Ok(cfg)
    }
}

/// A loaded instance with its optimum, if one is known or computable.
pub struct BoundInstance {
    pub instance: Instance,
    pub opt: Option<Rational>,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Reads an instance and the optimum value from `opt_path`, or from the
/// sidecar when `opt_path` is `None` and the sidecar exists.
pub fn load_instance(
    path: &Path,
    opt_path: Option<&Path>,
) -> CliResult<(Instance, Option<seip_core::io::OptimumFile>)> {
    let inst = read_instance(path).map_err(|e| CliError::from(e).context(path.display()))?;
    let sidecar = sidecar_path(path);
    let opt_path = match opt_path {
        Some(p) => Some(p.to_path_buf()),
        None => sidecar.exists().then_some(sidecar),
    };
    let opt = match opt_path {
        Some(p) => {
            let text =
                std::fs::read_to_string(&p).map_err(|e| CliError::from(e).context(p.display()))?;
            Some(
                optimum_from_json(&text, inst.n())
                    .map_err(|e| CliError::from(e).context(p.display()))?,
            )
        }
        None => None,
    };
    Ok((inst, opt))
}

fn bind(cfg: &ExperimentConfig, base: &Path) -> CliResult<Vec<BoundInstance>> {
    let sources = match &cfg.instance {
        Sources::One(s) => std::slice::from_ref(s),
        Sources::Many(v) => v.as_slice(),
    };
    let mut out = Vec::new();
    for s in sources {
        match s {
            InstanceSource::File(p) => {
                let (instance, opt) = load_instance(&resolve(base, p), None)?;
                out.push(BoundInstance {
                    instance,
                    opt: opt.map(|o| o.value),
                });
            }
            InstanceSource::Generate(params) => {
                for g in params.generate()? {
                    out.push(BoundInstance {
                        opt: g.optimum.map(|k| k.value().clone()),
                        instance: g.instance,
                    });
                }
            }
        }
    }
    if cfg.oracle {
        for b in &mut out {
            if b.opt.is_none() {
                let limit = seip_core::analysis::DEFAULT_ORACLE_LIMIT;
                if b.instance.m() <= limit {
                    b.opt = Some(exact_solve_with_limit(&b.instance, limit)?.0);
                }
            }
        }
    }
    Ok(out)
}

struct Cell<'a> {
    /// Indices of the instance and of the algorithm entry.
    key: (usize, usize),
    bound: &'a BoundInstance,
    algorithm: Algorithm,
    options: AlgorithmOptions,
    seed: Option<u64>,
    budget: Option<u64>,
}

pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    pub summaries: Vec<Summary>,
    /// First failure, if a cell failed.
    pub failure: Option<String>,
}

impl ExperimentResult {
    pub fn results_tsv(&self) -> String {
        let mut out = format!("{RESULT_HEADER}\n");
        for r in &self.rows {
            out.push_str(&r.to_tsv());
            out.push('\n');
        }
        out
    }

    pub fn summary_tsv(&self) -> String {
        let mut out = format!("{SUMMARY_HEADER}\n");
        for s in &self.summaries {
            out.push_str(&s.to_tsv());
            out.push('\n');
        }
        out
    }
}

/// Runs every cell of `cfg` on `jobs` threads. Seeds of evolutionary
/// algorithms are `base_seed + t` for `t < runs`; deterministic algorithms
/// run once per instance. After a failing cell, cells not yet started are
/// reported as `skipped`.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    base: &Path,
    jobs: usize,
) -> CliResult<ExperimentResult> {
    if cfg.algorithms.is_empty() {
        return Err(CliError::usage("experiment config lists no algorithms"));
    }
    let bound = bind(cfg, base)?;
    let mut cells = Vec::new();
    let mut thresholds = Vec::new();
    for (bi, b) in bound.iter().enumerate() {
        let vars = BudgetVars::of(&b.instance);
        thresholds.push(
            cfg.threshold
                .as_deref()
                .map(|t| evaluate_expression(t, vars))
                .transpose()
                .map_err(|e| CliError::usage(format!("threshold: {e}")))?,
        );
        for (ai, entry) in cfg.algorithms.iter().enumerate() {
            let algorithm = entry.algorithm();
            if !algorithm.is_evolutionary() {
                cells.push(Cell {
                    key: (bi, ai),
                    bound: b,
                    algorithm,
                    options: entry.options(),
                    seed: None,
                    budget: None,
                });
                continue;
            }
            let src = cfg
                .budget
                .as_deref()
                .ok_or_else(|| CliError::usage(format!("{algorithm} needs a budget expression")))?;
            let budget =
                evaluate_budget(src, vars).map_err(|e| CliError::usage(format!("budget: {e}")))?;
            for t in 0..cfg.runs {
                cells.push(Cell {
                    key: (bi, ai),
                    bound: b,
                    algorithm,
                    options: entry.options(),
                    seed: Some(cfg.base_seed.wrapping_add(t)),
                    budget: Some(budget),
                });
            }
        }
    }

    let abort = AtomicBool::new(false);
    let run_cell = |c: &Cell| -> (ResultRow, Option<String>) {
        let mut row = ResultRow {
            instance: c.bound.instance.name().to_string(),
            algorithm: c.algorithm.name().to_string(),
            seed: c.seed,
            steps_used: 0,
            cost: None,
            opt: c.bound.opt.clone(),
            status: "skipped".into(),
            wall_ms: 0,
        };
        if abort.load(Ordering::Relaxed) {
            return (row, None);
        }
        let req = RunRequest {
            algorithm: c.algorithm,
            options: c.options.clone(),
            seed: c.seed,
            budget: c.budget,
            trace: TraceLevel::Off,
        };
        let start = Instant::now();
        let outcome = run_algorithm(&c.bound.instance, &req);
        row.wall_ms = start.elapsed().as_millis();
        match outcome {
            Ok(o) => {
                row.steps_used = o.steps_used;
                row.cost = o.cost;
                row.status = "ok".into();
                (row, None)
            }
            Err(e) => {
                abort.store(true, Ordering::Relaxed);
                let msg = format!("{} on {}: {}", row.algorithm, row.instance, e.message);
                row.status = format!("failed: {}", e.message.replace(['\t', '\n'], " "));
                (row, Some(msg))
            }
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::failure(e.to_string()))?;
    // `collect` on an indexed parallel iterator keeps the cell order.
    let results: Vec<(ResultRow, Option<String>)> =
        pool.install(|| cells.par_iter().map(run_cell).collect());
    let failure = results.iter().find_map(|(_, f)| f.clone());
    let rows: Vec<ResultRow> = results.into_iter().map(|(r, _)| r).collect();

    let mut summaries = Vec::new();
    for (bi, (b, threshold)) in bound.iter().zip(&thresholds).enumerate() {
        for (ai, entry) in cfg.algorithms.iter().enumerate() {
            let mine: Vec<&ResultRow> = cells
                .iter()
                .zip(&rows)
                .filter(|(c, _)| c.key == (bi, ai))
                .map(|(_, r)| r)
                .collect();
            summaries.push(Summary::of(
                b.instance.name(),
                entry.algorithm().name(),
                &mine,
                threshold.as_ref(),
            ));
        }
    }
    Ok(ExperimentResult {
        rows,
        summaries,
        failure,
    })
}

/// `<output>.summary.tsv`
pub fn summary_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".summary.tsv");
    s.into()
}
