//! The pinned random corpus: 200 small instances with `k` in `2..=4`,
//! `n` in `8..=20` and `m <= 16`, all within reach of the exact oracle.

use crate::error::Result;
use crate::instance::SetCoverInstance;
use crate::rng::Rng;
use crate::weight::Rational;

use super::random::{gen_random_k_cover, RandomParams};

pub const CORPUS_SIZE: usize = 200;

/// Parameters of corpus instance `index`, derived from its own seed.
pub fn corpus_params(index: usize) -> RandomParams {
    let seed = index as u64;
    let mut rng = Rng::new(seed ^ 0xC0_4B_05);
    let k = 2 + index % 3;
    let n = rng.range_inclusive(8, 20) as usize;
    let min_m = n.div_ceil(k);
    let m = rng.range_inclusive(min_m as u64, 16) as usize;
    RandomParams {
        n,
        m,
        k,
        weight_lo: Rational::from_integer(1.into()),
        weight_hi: Rational::from_integer(10.into()),
        seed,
    }
}

pub fn corpus_instance(index: usize) -> Result<SetCoverInstance<Rational>> {
    let params = corpus_params(index);
    Ok(gen_random_k_cover(&params)?.with_name(format!("corpus-{index:03}")))
}

pub fn corpus() -> Result<Vec<SetCoverInstance<Rational>>> {
    (0..CORPUS_SIZE).map(corpus_instance).collect()
}
