#![allow(dead_code)]

use seip_core::generators::{gen_random_k_cover, RandomParams};
use seip_core::instance::instance_from_pairs;
use seip_core::weight::{integer, rational};
use seip_core::{Instance, Rational, Solution};

pub fn e1() -> Instance {
    instance_from_pairs(
        3,
        "E1",
        &[(&[1, 2], integer(1)), (&[3], integer(1)), (&[1, 2, 3], rational(5, 2))],
    )
    .unwrap()
}

/// Every selection in lexicographic order, no pruning at all.
pub fn brute_force(inst: &Instance) -> (Rational, Solution) {
    let m = inst.m();
    assert!(m <= 20);
    let mut best: Option<(Rational, Solution)> = None;
    for code in 0u32..(1 << m) {
        // x_1 is the most significant bit, so codes ascend lexicographically
        let x = Solution::from_indices(m, (0..m).filter(|i| code >> (m - 1 - i) & 1 == 1));
        if !inst.is_feasible(&x).unwrap() {
            continue;
        }
        let c = inst.cost(&x).unwrap();
        if best.as_ref().map_or(true, |(b, _)| c < *b) {
            best = Some((c, x));
        }
    }
    best.unwrap()
}

pub fn small_random(seed: u64, max_m: usize) -> Instance {
    let n = 4 + (seed % 6) as usize;
    let k = 1 + (seed % 3) as usize;
    let min_m = n.div_ceil(k);
    let m = (min_m + (seed / 3) as usize % 5).min(max_m).max(min_m);
    gen_random_k_cover(&RandomParams {
        n,
        m,
        k,
        weight_lo: integer(1),
        weight_hi: integer(5),
        seed,
    })
    .unwrap()
}
