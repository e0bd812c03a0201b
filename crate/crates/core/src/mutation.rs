use serde::{Deserialize, Serialize};

use crate::rng::Rng;
use crate::solution::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Flip one uniformly chosen position.
    OneBit,
    /// Flip every position independently with probability `1/m`.
    BitWise,
}

impl Mutation {
    /// Mutates `x` in place.
    #[inline]
    pub fn apply_in_place(self, x: &mut Solution, rng: &mut Rng) {
        match self {
            Mutation::OneBit => one_bit_in_place(x, rng),
            Mutation::BitWise => bitwise_in_place(x, rng),
        }
    }

    pub fn apply(self, x: &Solution, rng: &mut Rng) -> Solution {
        let mut y = x.clone();
        self.apply_in_place(&mut y, rng);
        y
    }
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "one-bit" => Ok(Mutation::OneBit),
            "bit-wise" | "bitwise" => Ok(Mutation::BitWise),
            _ => Err(format!("unknown mutation {s:?} (expected one-bit or bit-wise)")),
        }
    }
}

#[inline]
fn one_bit_in_place(x: &mut Solution, rng: &mut Rng) {
    assert!(!x.is_empty(), "mutation needs at least one position");
    let i = rng.index(x.len());
    x.flip(i);
}

#[inline]
fn bitwise_in_place(x: &mut Solution, rng: &mut Rng) {
    let m = x.len();
    assert!(m > 0, "mutation needs at least one position");
    for i in 0..m {
        if rng.one_in(m as u64) {
            x.flip(i);
        }
    }
}

pub fn one_bit_mutation(x: &Solution, rng: &mut Rng) -> Solution {
    Mutation::OneBit.apply(x, rng)
}

pub fn bitwise_mutation(x: &Solution, rng: &mut Rng) -> Solution {
    Mutation::BitWise.apply(x, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_bit_flips_exactly_one() {
        let mut rng = Rng::new(3);
        let x = Solution::from_flags(&[0, 1, 0, 1, 1]);
        for _ in 0..1000 {
            assert_eq!(one_bit_mutation(&x, &mut rng).hamming(&x), 1);
        }
    }

    #[test]
    fn one_bit_is_uniform_over_positions() {
        let mut rng = Rng::new(11);
        let x = Solution::empty(3);
        let mut hits = [0u32; 3];
        let trials = 30_000;
        for _ in 0..trials {
            let y = one_bit_mutation(&x, &mut rng);
            hits[y.ones().next().unwrap()] += 1;
        }
        // Each position has probability 1/3; allow 4 standard deviations.
        let sd = (trials as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for h in hits {
            assert!((h as f64 - trials as f64 / 3.0).abs() < 4.0 * sd, "{hits:?}");
        }
    }

    #[test]
    fn fixed_seed_reproduces_output() {
        let x = Solution::empty(3);
        let a = one_bit_mutation(&x, &mut Rng::new(42));
        for _ in 0..10 {
            assert_eq!(one_bit_mutation(&x, &mut Rng::new(42)), a);
        }
        let mut r1 = Rng::new(5);
        let mut r2 = Rng::new(5);
        let x = Solution::empty(12);
        for _ in 0..200 {
            assert_eq!(bitwise_mutation(&x, &mut r1), bitwise_mutation(&x, &mut r2));
        }
    }

    #[test]
    fn bitwise_single_position_always_flips() {
        let mut rng = Rng::new(9);
        for _ in 0..100 {
            assert_eq!(bitwise_mutation(&Solution::empty(1), &mut rng), Solution::full(1));
        }
    }

    #[test]
    fn bitwise_mean_flip_count_is_one() {
        let mut rng = Rng::new(2024);
        let x = Solution::empty(10);
        let trials = 100_000;
        let total: usize = (0..trials).map(|_| bitwise_mutation(&x, &mut rng).count()).sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 1.0).abs() <= 0.02, "mean {mean}");
    }

    #[test]
    fn parses_names() {
        assert_eq!("one-bit".parse::<Mutation>().unwrap(), Mutation::OneBit);
        assert_eq!("bit-wise".parse::<Mutation>().unwrap(), Mutation::BitWise);
        assert!("two-bit".parse::<Mutation>().is_err());
    }
}
