use crate::analysis::{exact_solve, KnownOptimum, DEFAULT_ORACLE_LIMIT};
use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::rng::Rng;
use crate::weight::Rational;

use super::random::{draw_subset, draw_weight, WEIGHT_DENOMINATOR};

const MAX_ATTEMPTS: u64 = 16;

/// Plants `L` disjoint `k`-sets with weights in `[1, 2]` as the optimum and
/// adds `extra` random distractors of size `1..=k`, each weighing at least
/// `k` times the heaviest planted set. When `m` is within the oracle limit
/// the planted value is checked against the exact optimum; a mismatch
/// retries with the sub-seed `seed + attempt·2^32`.
pub fn gen_known_opt(
    k: usize,
    l: usize,
    extra: usize,
    seed: u64,
) -> Result<(SetCoverInstance<Rational>, KnownOptimum)> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and L must be at least 1".into()));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let sub = seed.wrapping_add(attempt << 32);
        let (inst, known) = plant(k, l, extra, seed, sub)?;
        if inst.m() > DEFAULT_ORACLE_LIMIT {
            return Ok((inst, known));
        }
        let (value, _) = exact_solve(&inst)?;
        if value == *known.value() {
            return Ok((inst, known));
        }
    }
    Err(Error::Generation(format!(
        "planted optimum not confirmed after {MAX_ATTEMPTS} attempts"
    )))
}

fn plant(
    k: usize,
    l: usize,
    extra: usize,
    seed: u64,
    sub: u64,
) -> Result<(SetCoverInstance<Rational>, KnownOptimum)> {
    let n = k * l;
    let d = WEIGHT_DENOMINATOR;
    let mut rng = Rng::new(sub);
    let mut perm: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut perm);
    let planted: Vec<(Vec<usize>, Rational)> = perm
        .chunks(k)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            (c, draw_weight(&mut rng, (d, 2 * d)))
        })
        .collect();
    let heaviest = planted.iter().map(|(_, w)| w).max().expect("L >= 1").clone();
    // k·w_max + t/1000 with t in [0, 1000]
    let base = heaviest * Rational::from_integer(k.into());
    let mut sets: Vec<(Vec<usize>, Rational, bool)> =
        planted.iter().map(|(s, w)| (s.clone(), w.clone(), true)).collect();
    for _ in 0..extra {
        let size = rng.range_inclusive(1, k as u64) as usize;
        let elements = draw_subset(&mut rng, n, size);
        sets.push((elements, &base + draw_weight(&mut rng, (0, d)), false));
    }
    rng.shuffle(&mut sets);
    let known = KnownOptimum::new(n, planted)?;
    let inst = SetCoverInstance::new(
        n,
        format!("known-opt-k{k}-L{l}-x{extra}-s{seed}"),
        sets.into_iter().map(|(s, w, _)| (s, w)),
    )?;
    Ok((inst, known))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_only() {
        let (inst, known) = gen_known_opt(3, 4, 0, 5).unwrap();
        assert_eq!((inst.n(), inst.m()), (12, 4));
        assert_eq!(inst.total_weight(), *known.value());
        for e in 1..=12 {
            assert!(known.sets()[known.column_of(e)].contains(&e));
        }
    }

    #[test]
    fn oracle_agrees() {
        for seed in 0..10 {
            let (inst, known) = gen_known_opt(3, 3, 8, seed).unwrap();
            assert_eq!(exact_solve(&inst).unwrap().0, *known.value());
        }
    }
}
