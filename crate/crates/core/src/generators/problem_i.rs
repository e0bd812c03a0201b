use num_traits::Zero;

use crate::analysis::KnownOptimum;
use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::weight::{format_rational, harmonic, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemIParams {
    pub k: usize,
    pub l: usize,
    pub epsilon: Rational,
}

#[derive(Clone, Debug)]
pub struct ProblemI {
    pub instance: SetCoverInstance<Rational>,
    /// `{S*_i}`, absent when `ε > H_k − 1` makes the singletons cheaper.
    pub optimum: Option<KnownOptimum>,
    /// Set when `ε >= H_k − 1`.
    pub warning: Option<String>,
}

/// Problem I: `L` disjoint columns `S*_i = {(i−1)k+1, ..., ik}` of weight
/// `1 + ε`, followed, column by column, by the singletons `S_ij` holding the
/// `j`-th element of `S*_i` at weight `1/j`. Greedy takes every singleton
/// and pays `L·H_k` against the optimum `L·(1 + ε)`.
pub fn gen_problem_i(params: &ProblemIParams) -> Result<ProblemI> {
    let ProblemIParams { k, l, epsilon } = params;
    let (k, l) = (*k, *l);
    if k < 2 {
        return Err(Error::InvalidArgument(
            "problem I needs k >= 2 (H_1 - 1 = 0 leaves no valid epsilon)".into(),
        ));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("problem I needs L >= 1".into()));
    }
    if *epsilon <= Rational::zero() {
        return Err(Error::InvalidArgument("problem I needs epsilon > 0".into()));
    }
    let one = Rational::from_integer(1.into());
    let column_weight = &one + epsilon;
    let mut sets: Vec<(Vec<usize>, Rational)> = Vec::with_capacity(l * (k + 1));
    for i in 0..l {
        sets.push(((i * k + 1..=i * k + k).collect(), column_weight.clone()));
    }
    for i in 0..l {
        for j in 1..=k {
            sets.push((vec![i * k + j], Rational::new(1.into(), (j as u64).into())));
        }
    }
    let name = format!("problem-i-k{k}-L{l}-eps{}", format_rational(epsilon));
    let instance = SetCoverInstance::new(k * l, name, sets)?;

    let threshold = harmonic(k as u64)? - &one;
    let warning = (*epsilon >= threshold).then(|| {
        format!(
            "epsilon {} >= H_k - 1 = {}: the columns S*_i are no longer the unique optimum",
            format_rational(epsilon),
            format_rational(&threshold)
        )
    });
    let optimum = if *epsilon > threshold {
        None
    } else {
        Some(KnownOptimum::new(
            k * l,
            (0..l)
                .map(|i| ((i * k + 1..=i * k + k).collect(), column_weight.clone()))
                .collect(),
        )?)
    };
    Ok(ProblemI {
        instance,
        optimum,
        warning,
    })
}
