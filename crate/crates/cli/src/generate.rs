use seip_core::analysis::KnownOptimum;
use seip_core::generators::{
    corpus_instance, gen_known_opt, gen_problem_i, gen_random_k_cover, ProblemIParams, RandomParams,
    CORPUS_SIZE,
};
use seip_core::weight::parse_rational;
use seip_core::{Instance, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    ProblemI,
    RandomK,
    KnownOpt,
    Corpus,
}

/// Flags of `generate`, also accepted as the `generate` instance source of
/// an experiment. Rationals are written as `p/q` strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub kind: Option<GeneratorKind>,
    pub k: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub epsilon: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub seed: Option<u64>,
    /// Distractor count for `known-opt`.
    pub extra: Option<usize>,
    pub weight_lo: Option<String>,
    pub weight_hi: Option<String>,
    /// Corpus member; all of them when absent.
    pub index: Option<usize>,
}

pub struct Generated {
    pub instance: Instance,
    pub optimum: Option<KnownOptimum>,
    pub warning: Option<String>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::usage(format!("--kind {kind} needs --{flag}")))
}

fn rational_arg(v: &Option<String>, flag: &str, default: Option<&str>) -> CliResult<Rational> {
    let s = v
        .as_deref()
        .or(default)
        .ok_or_else(|| CliError::usage(format!("missing --{flag}")))?;
    parse_rational(s).map_err(|e| CliError::usage(format!("--{flag}: {e}")))
}

impl GeneratorParams {
    pub fn generate(&self) -> CliResult<Vec<Generated>> {
        let kind = self.kind.ok_or_else(|| CliError::usage("missing --kind"))?;
        let plain = |instance| Generated {
            instance,
            optimum: None,
            warning: None,
        };
        Ok(match kind {
            GeneratorKind::ProblemI => {
                let params = ProblemIParams {
                    k: need(self.k, "k", "problem-i")?,
                    l: need(self.l, "L", "problem-i")?,
                    epsilon: rational_arg(&self.epsilon, "epsilon", None)?,
                };
                let p = gen_problem_i(&params).map_err(|e| CliError::usage(e.to_string()))?;
                vec![Generated {
                    instance: p.instance,
                    optimum: p.optimum,
                    warning: p.warning,
                }]
            }
            GeneratorKind::RandomK => {
                let params = RandomParams {
                    n: need(self.n, "n", "random-k")?,
                    m: need(self.m, "m", "random-k")?,
                    k: need(self.k, "k", "random-k")?,
                    weight_lo: rational_arg(&self.weight_lo, "weight-lo", Some("1"))?,
                    weight_hi: rational_arg(&self.weight_hi, "weight-hi", Some("10"))?,
                    seed: need(self.seed, "seed", "random-k")?,
                };
                vec![plain(
                    gen_random_k_cover(&params).map_err(|e| CliError::usage(e.to_string()))?,
                )]
            }
            GeneratorKind::KnownOpt => {
                let (instance, known) = gen_known_opt(
                    need(self.k, "k", "known-opt")?,
                    need(self.l, "L", "known-opt")?,
                    self.extra.unwrap_or(0),
                    need(self.seed, "seed", "known-opt")?,
                )?;
                vec![Generated {
                    instance,
                    optimum: Some(known),
                    warning: None,
                }]
            }
            GeneratorKind::Corpus => match self.index {
                Some(i) if i >= CORPUS_SIZE => {
                    return Err(CliError::usage(format!(
                        "--index must be below {CORPUS_SIZE}"
                    )))
                }
                Some(i) => vec![plain(corpus_instance(i)?)],
                None => (0..CORPUS_SIZE)
                    .map(|i| Ok(plain(corpus_instance(i)?)))
                    .collect::<CliResult<_>>()?,
            },
        })
    }
}
