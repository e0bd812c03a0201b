//! The `seip` command-line workbench: instance generation, single solver
//! runs, batch experiments and verification of traces and certificates.

pub mod algorithms;
pub mod budget;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod rows;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seip_core::analysis::{
    certificate_from_cover_run, check_path_certificate, exact_solve, price_audit, AuditStep,
    DEFAULT_ORACLE_LIMIT,
};
use seip_core::closure::extend_closure;
use seip_core::io::{
    certificate_from_json, certificate_to_json, instance_to_json, optimum_to_json, sidecar_path,
};
use seip_core::solvers::replay_seip;
use seip_core::solvers::trace::{read_prices, read_trace, write_prices, write_trace, TraceEvent};
use seip_core::solvers::TraceLevel;
use seip_core::weight::format_rational;
use seip_core::{Instance, IsolationFunction, IsolationKind, Mutation, Rational};
use serde::de::DeserializeOwned;

use algorithms::{run_algorithm, Algorithm, AlgorithmOptions, RunRequest};
use budget::{evaluate_budget, BudgetVars};
use error::{exit, CliError, CliResult};
use experiment::{load_instance, run_experiment, summary_path, ExperimentConfig};
use generate::{GeneratorKind, GeneratorParams};
use rows::{ResultRow, RESULT_HEADER};

#[derive(Parser, Debug)]
#[command(
    name = "seip",
    version,
    about = "Set cover solvers, generators and checkers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated instance (and its optimum sidecar, when known).
    Generate(GenerateArgs),
    /// Run one algorithm on one instance and print a result row.
    Solve(SolveArgs),
    /// Run every (algorithm, seed) cell of a JSON experiment config.
    Experiment(ExperimentArgs),
    /// Check a path certificate, a price audit, or a trace replay.
    Verify(VerifyArgs),
}

/// Parses a kebab-case enum name through its serde representation.
fn kebab<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub k: Option<usize>,
    /// Column count (problem I, known-opt).
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Rational, e.g. `1/100`.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Distractor sets for known-opt.
    #[arg(long)]
    pub extra: Option<usize>,
    #[arg(long)]
    pub weight_lo: Option<String>,
    #[arg(long)]
    pub weight_hi: Option<String>,
    /// Corpus member (all 200 when absent; `--out` is then a directory).
    #[arg(long)]
    pub index: Option<usize>,
    /// Compute the optimum with the exact oracle when none is planted.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceDetail {
    Accepted,
    Full,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub algorithm: Algorithm,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Step budget; an expression in n, m, k, L such as `50*m*n^2`.
    #[arg(long)]
    pub budget: Option<String>,
    /// Solve the subset-closure of the instance.
    #[arg(long)]
    pub extend: bool,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "accepted")]
    pub trace_level: TraceDetail,
    /// Element prices of greedy or gaww.
    #[arg(long)]
    pub prices: Option<PathBuf>,
    /// Path certificate of a greedy or gaww run (needs the optimum).
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Optimum file; defaults to the `.opt` sidecar of the instance.
    #[arg(long)]
    pub optimum: Option<PathBuf>,
    #[arg(long, value_parser = kebab::<IsolationKind>)]
    pub isolation: Option<IsolationKind>,
    #[arg(long, value_parser = kebab::<seip_core::solvers::Acceptance>)]
    pub acceptance: Option<seip_core::solvers::Acceptance>,
    #[arg(long, value_parser = kebab::<seip_core::solvers::Initialization>)]
    pub initialization: Option<seip_core::solvers::Initialization>,
    #[arg(long)]
    pub mutation: Option<Mutation>,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: usize,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    pub config: PathBuf,
    /// Overrides the output path of the config.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, env = "SEIP_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// The files refer to the subset-closure of the instance.
    #[arg(long)]
    pub extend: bool,
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Price file of a greedy trace; requires an optimum with planted sets.
    #[arg(long)]
    pub prices: Option<PathBuf>,
    #[arg(long)]
    pub optimum: Option<PathBuf>,
    #[arg(long, value_parser = kebab::<IsolationKind>, default_value = "covered-elements")]
    pub isolation: IsolationKind,
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Experiment(a) => cmd_experiment(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::from(e).context(path.display()))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::from(e).context(path.display()))
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::from(e).context(path.display()))
}

fn opt_display(v: Option<&Rational>) -> String {
    v.map(format_rational).unwrap_or_else(|| "unknown".into())
}

pub fn cmd_generate(a: &GenerateArgs) -> CliResult<i32> {
    let params = GeneratorParams {
        kind: Some(a.kind),
        k: a.k,
        l: a.l,
        epsilon: a.epsilon.clone(),
        n: a.n,
        m: a.m,
        seed: a.seed,
        extra: a.extra,
        weight_lo: a.weight_lo.clone(),
        weight_hi: a.weight_hi.clone(),
        index: a.index,
    };
    let generated = params.generate()?;
    let many = generated.len() > 1;
    if many {
        match &a.out {
            Some(dir) => std::fs::create_dir_all(dir)
                .map_err(|e| CliError::from(e).context(dir.display()))?,
            None => {
                return Err(CliError::usage(
                    "generating the whole corpus needs --out DIR",
                ))
            }
        }
    }
    for g in generated {
        if let Some(w) = &g.warning {
            eprintln!("warning: {w}");
        }
        let inst = &g.instance;
        let value = match (&g.optimum, a.oracle) {
            (Some(k), _) => Some(k.value().clone()),
            (None, true) => Some(exact_solve(inst)?.0),
            (None, false) => None,
        };
        let summary = format!(
            "{}: n={} m={} k={} OPT={}",
            inst.name(),
            inst.n(),
            inst.m(),
            inst.k(),
            opt_display(value.as_ref())
        );
        let path = match (&a.out, many) {
            (Some(dir), true) => Some(dir.join(format!("{}.inst", inst.name()))),
            (out, _) => out.clone(),
        };
        match path {
            Some(path) => {
                write_file(&path, &instance_to_json(inst))?;
                if let Some(v) = &value {
                    write_file(
                        &sidecar_path(&path),
                        &optimum_to_json(v, g.optimum.as_ref()),
                    )?;
                }
                println!("{summary}");
            }
            None => {
                print!("{}", instance_to_json(inst));
                eprintln!("{summary}");
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn solve_options(a: &SolveArgs) -> AlgorithmOptions {
    let d = AlgorithmOptions::default();
    AlgorithmOptions {
        mutation: a.mutation.unwrap_or(d.mutation),
        isolation: a.isolation.unwrap_or(d.isolation),
        acceptance: a.acceptance.unwrap_or(d.acceptance),
        initialization: a.initialization.unwrap_or(d.initialization),
        extend: a.extend,
        oracle_limit: a.oracle_limit,
    }
}

pub fn cmd_solve(a: &SolveArgs) -> CliResult<i32> {
    let (inst, opt) = load_instance(&a.instance, a.optimum.as_deref())?;
    let opt = opt.map(|o| o.value);
    let budget = a
        .budget
        .as_deref()
        .map(|b| evaluate_budget(b, BudgetVars::of(&inst)))
        .transpose()
        .map_err(|e| CliError::usage(format!("--budget: {e}")))?;
    if (a.prices.is_some() || a.certificate.is_some())
        && !matches!(a.algorithm, Algorithm::Greedy | Algorithm::Gaww)
    {
        return Err(CliError::usage(
            "--prices and --certificate need greedy or gaww",
        ));
    }
    let req = RunRequest {
        algorithm: a.algorithm,
        options: solve_options(a),
        seed: a.seed,
        budget,
        trace: match (&a.trace, a.trace_level) {
            (None, _) => TraceLevel::Off,
            (Some(_), TraceDetail::Accepted) => TraceLevel::Accepted,
            (Some(_), TraceDetail::Full) => TraceLevel::Full,
        },
    };
    let start = Instant::now();
    let outcome = run_algorithm(&inst, &req)?;
    let wall_ms = start.elapsed().as_millis();

    if let Some(path) = &a.trace {
        let mut out = create(path)?;
        write_trace(&mut out, a.algorithm.name(), &outcome.trace)?;
        out.flush()?;
    }
    if let Some(run) = &outcome.cover_run {
        if let Some(path) = &a.prices {
            let mut out = create(path)?;
            write_prices(&mut out, &run.prices)?;
            out.flush()?;
        }
        if let Some(path) = &a.certificate {
            let opt = opt
                .as_ref()
                .ok_or_else(|| CliError::usage("--certificate needs a known optimum"))?;
            let cert = certificate_from_cover_run(&outcome.instance, run, opt)?;
            write_file(path, &certificate_to_json(&cert))?;
        }
    }

    let row = ResultRow {
        instance: inst.name().to_string(),
        algorithm: a.algorithm.name().to_string(),
        seed: a.seed.filter(|_| a.algorithm.is_evolutionary()),
        steps_used: outcome.steps_used,
        cost: outcome.cost.clone(),
        opt,
        status: "ok".into(),
        wall_ms,
    };
    println!("{RESULT_HEADER}");
    println!("{}", row.to_tsv());
    if outcome.cost.is_none() {
        eprintln!("no feasible solution within the budget");
        return Ok(exit::NO_FEASIBLE);
    }
    Ok(exit::SUCCESS)
}

pub fn cmd_experiment(a: &ExperimentArgs) -> CliResult<i32> {
    let text = std::fs::read_to_string(&a.config)
        .map_err(|e| CliError::usage(format!("{}: {e}", a.config.display())))?;
    let cfg = ExperimentConfig::from_json(&text)?;
    let base = a.config.parent().unwrap_or(Path::new(".")).to_path_buf();
    let result = run_experiment(&cfg, &base, a.jobs)?;
    let output = a.output.clone().or_else(|| {
        cfg.output.as_ref().map(|p| {
            if p.is_absolute() {
                p.clone()
            } else {
                base.join(p)
            }
        })
    });
    match output {
        Some(path) => {
            write_file(&path, &result.results_tsv())?;
            write_file(&summary_path(&path), &result.summary_tsv())?;
            print!("{}", result.summary_tsv());
        }
        None => {
            print!("{}", result.results_tsv());
            println!();
            print!("{}", result.summary_tsv());
        }
    }
    if let Some(f) = result.failure {
        eprintln!("error: experiment aborted: {f}");
        return Ok(exit::FAILURE);
    }
    Ok(exit::SUCCESS)
}

fn verify_instance(a: &VerifyArgs) -> CliResult<(Instance, Option<seip_core::io::OptimumFile>)> {
    let (inst, opt) = load_instance(&a.instance, a.optimum.as_deref())?;
    if a.extend {
        Ok((extend_closure(&inst)?, opt))
    } else {
        Ok((inst, opt))
    }
}

/// Returns whether the certificate passes.
fn verify_certificate(inst: &Instance, iso: &IsolationFunction, path: &Path) -> CliResult<bool> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::from(e).context(path.display()))?;
    let cert = certificate_from_json(&text, inst.m())
        .map_err(|e| CliError::from(e).context(path.display()))?;
    let report = check_path_certificate(inst, &cert, iso)?;
    let sum = format_rational(&report.ratio_sum);
    if let Some(v) = &report.violation {
        println!(
            "certificate: FAIL at step {}: {}: {}",
            v.step,
            v.condition.describe(),
            v.detail
        );
        return Ok(false);
    }
    let ratio = report
        .final_ratio
        .as_ref()
        .map(format_rational)
        .unwrap_or_default();
    if !report.is_sound() {
        println!("certificate: FAIL: final ratio {ratio} exceeds the certified bound {sum}");
        return Ok(false);
    }
    println!(
        "certificate: PASS steps={} gap={} sum_r={} cost={} ratio={}",
        cert.steps.len(),
        cert.gap,
        sum,
        format_rational(&report.final_cost),
        ratio
    );
    Ok(true)
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    if a.certificate.is_none() && a.trace.is_none() {
        return Err(CliError::usage("verify needs --certificate or --trace"));
    }
    if a.prices.is_some() && a.trace.is_none() {
        return Err(CliError::usage("--prices needs --trace"));
    }
    let (inst, opt) = verify_instance(a)?;
    let iso = IsolationFunction::of_kind(a.isolation, &inst);
    let mut pass = true;

    if let Some(path) = &a.certificate {
        pass &= verify_certificate(&inst, &iso, path)?;
    }

    if let Some(path) = &a.trace {
        let rows = read_trace(open(path)?, inst.m())
            .map_err(|e| CliError::from(e).context(path.display()))?;
        let algorithm = match rows.first() {
            Some(r) => r.algorithm.parse::<Algorithm>().map_err(CliError::usage)?,
            None => return Err(CliError::usage(format!("{}: empty trace", path.display()))),
        };
        let records: Vec<_> = rows.into_iter().map(|r| r.record).collect();

        if let Some(prices_path) = &a.prices {
            let known = opt.as_ref().and_then(|o| o.known.as_ref()).ok_or_else(|| {
                CliError::usage("price audits need an optimum file with its sets")
            })?;
            let prices = read_prices(open(prices_path)?, inst.n())
                .map_err(|e| CliError::from(e).context(prices_path.display()))?;
            let steps = AuditStep::from_trace(&inst, &records)?;
            let cost = records.last().map(|r| r.cost.clone()).unwrap_or_default();
            let report = price_audit(inst.n(), &prices, &steps, &cost, known)?;
            print!("{}", report.to_tsv());
            let ok = report.all_checks_pass();
            println!(
                "price audit: {} sum_price={} cost={} identity={} unaudited={}",
                if ok { "PASS" } else { "FAIL" },
                format_rational(&report.price_total),
                format_rational(&report.cost),
                report.identity_holds,
                report.unaudited
            );
            pass &= ok;
        } else if matches!(algorithm, Algorithm::Lseip | Algorithm::Gseip) {
            match replay_seip(&inst, &iso, &records) {
                Ok(pop) => {
                    let best = pop.best_feasible().map(|r| format_rational(&r.cost));
                    println!(
                        "replay: PASS records={} population={} best_cost={}",
                        records.len(),
                        pop.len(),
                        best.unwrap_or_else(|| "-".into())
                    );
                }
                Err(e) => {
                    println!("replay: FAIL {e}");
                    pass = false;
                }
            }
        } else {
            pass &= check_trace_consistency(&inst, &records)?;
        }
    }
    Ok(if pass { exit::SUCCESS } else { exit::FAILURE })
}

/// Recomputes the cost and covered count of every record.
fn check_trace_consistency(
    inst: &Instance,
    records: &[seip_core::solvers::TraceRecord<Rational>],
) -> CliResult<bool> {
    for r in records {
        let cost = inst.cost(&r.solution)?;
        let covered = inst.covered(&r.solution)?.len();
        if cost != r.cost || covered != r.cardinality {
            println!(
                "trace: FAIL at step {}: recorded values do not match the instance",
                r.step
            );
            return Ok(false);
        }
    }
    let best = records
        .iter()
        .filter(|r| r.event != TraceEvent::Reject && r.cardinality == inst.n())
        .map(|r| &r.cost)
        .min()
        .map(format_rational);
    println!(
        "trace: PASS records={} best_cost={}",
        records.len(),
        best.unwrap_or_else(|| "-".into())
    );
    Ok(true)
}
