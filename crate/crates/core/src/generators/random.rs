use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::rng::Rng;
use crate::weight::Rational;

/// Denominator of generated weights.
pub(crate) const WEIGHT_DENOMINATOR: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub weight_lo: Rational,
    pub weight_hi: Rational,
    pub seed: u64,
}

/// Numerator range `t` such that `t/1000` lies in `[lo, hi]`.
pub(crate) fn weight_numerators(lo: &Rational, hi: &Rational) -> Result<(u64, u64)> {
    if *lo <= Rational::zero() || hi < lo {
        return Err(Error::InvalidArgument(
            "weight range must satisfy 0 < lo <= hi".into(),
        ));
    }
    let d = Rational::from_integer(BigInt::from(WEIGHT_DENOMINATOR));
    let a = (lo * &d).ceil().to_integer().to_u64();
    let b = (hi * &d).floor().to_integer().to_u64();
    match (a, b) {
        (Some(a), Some(b)) if a <= b => Ok((a, b)),
        _ => Err(Error::InvalidArgument(format!(
            "no weight with denominator {WEIGHT_DENOMINATOR} lies in the range"
        ))),
    }
}

pub(crate) fn draw_weight(rng: &mut Rng, (a, b): (u64, u64)) -> Rational {
    Rational::new(
        BigInt::from(rng.range_inclusive(a, b)),
        BigInt::from(WEIGHT_DENOMINATOR),
    )
}

/// `size` distinct elements of `[n]`, ascending.
pub(crate) fn draw_subset(rng: &mut Rng, n: usize, size: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    // partial Fisher-Yates
    for i in 0..size {
        let j = i + rng.index(n - i);
        pool.swap(i, j);
    }
    pool.truncate(size);
    pool.sort_unstable();
    pool
}

/// Random coverable instance with sets of size at most `k`. A random
/// permutation of `[n]` is cut into `ceil(n/k)` blocks, which guarantees
/// coverability; the remaining `m − ceil(n/k)` sets are random subsets of
/// size `1..=k`. The collection is then shuffled. Weights are multiples of
/// `1/1000` in the requested range.
pub fn gen_random_k_cover(params: &RandomParams) -> Result<SetCoverInstance<Rational>> {
    let RandomParams { n, m, k, seed, .. } = *params;
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be positive".into()));
    }
    let k = k.min(n);
    let blocks = n.div_ceil(k);
    if m < blocks {
        return Err(Error::InvalidArgument(format!(
            "m = {m} is too small to cover n = {n} with sets of size {k} (need {blocks})"
        )));
    }
    let range = weight_numerators(&params.weight_lo, &params.weight_hi)?;
    let mut rng = Rng::new(seed);
    let mut perm: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut perm);
    let mut sets: Vec<Vec<usize>> = perm.chunks(k).map(|c| c.to_vec()).collect();
    for _ in blocks..m {
        let size = rng.range_inclusive(1, k as u64) as usize;
        sets.push(draw_subset(&mut rng, n, size));
    }
    rng.shuffle(&mut sets);
    let weighted: Vec<(Vec<usize>, Rational)> =
        sets.into_iter().map(|s| (s, draw_weight(&mut rng, range))).collect();
    SetCoverInstance::new(n, format!("random-n{n}-m{m}-k{k}-s{seed}"), weighted)
}
