//! Subset closure of a collection ("extended input").
//!
//! Every nonempty subset of every input set becomes available, priced at the
//! cheapest input superset. Identical element sets are merged keeping the
//! minimum weight. Output order: the distinct input sets in first-appearance
//! order, then the new subsets in first-appearance order, where each input
//! set's proper subsets are visited by decreasing size and then
//! lexicographically.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::weight::Weight;

pub const DEFAULT_CLOSURE_BUDGET: u128 = 1 << 20;

pub fn extend_closure<W: Weight>(inst: &SetCoverInstance<W>) -> Result<SetCoverInstance<W>> {
    extend_closure_with_budget(inst, DEFAULT_CLOSURE_BUDGET)
}

/// Refuses when the number of generated subsets, `Σ (2^|S| − 1)`, exceeds
/// `budget`.
pub fn extend_closure_with_budget<W: Weight>(
    inst: &SetCoverInstance<W>,
    budget: u128,
) -> Result<SetCoverInstance<W>> {
    let needed = inst.sets().iter().try_fold(0u128, |acc, s| {
        let len = s.elements.len() as u32;
        let subsets = 1u128.checked_shl(len)?.checked_sub(1)?;
        acc.checked_add(subsets)
    });
    match needed {
        Some(needed) if needed <= budget => {}
        needed => {
            return Err(Error::ClosureTooLarge {
                needed: needed.unwrap_or(u128::MAX),
                budget,
            })
        }
    }

    let mut order: Vec<Vec<usize>> = Vec::new();
    let mut weight: HashMap<Vec<usize>, W> = HashMap::new();
    let mut offer = |elements: Vec<usize>, w: &W, order: &mut Vec<Vec<usize>>| {
        match weight.get_mut(&elements) {
            Some(cur) => {
                if w < cur {
                    *cur = w.clone();
                }
            }
            None => {
                weight.insert(elements.clone(), w.clone());
                order.push(elements);
            }
        }
    };

    for s in inst.sets() {
        offer(s.elements.clone(), &s.weight, &mut order);
    }
    for s in inst.sets() {
        let len = s.elements.len();
        let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << len) - 1)
            .map(|mask| {
                (0..len)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| s.elements[b])
                    .collect()
            })
            .collect();
        subsets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        for sub in subsets {
            offer(sub, &s.weight, &mut order);
        }
    }

    let sets: Vec<(Vec<usize>, W)> = order
        .into_iter()
        .map(|e| {
            let w = weight[&e].clone();
            (e, w)
        })
        .collect();
    SetCoverInstance::new(inst.n(), format!("{}+closure", inst.name()), sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::instance_from_pairs;
    use crate::weight::{integer, Rational};

    fn sets_of(inst: &SetCoverInstance<Rational>) -> Vec<(Vec<usize>, Rational)> {
        inst.sets().iter().map(|s| (s.elements.clone(), s.weight.clone())).collect()
    }

    #[test]
    fn singletons_are_a_fixed_point() {
        let inst = instance_from_pairs(
            3,
            "s",
            &[(&[1], integer(2)), (&[2], integer(1)), (&[3], integer(4))],
        )
        .unwrap();
        assert_eq!(sets_of(&extend_closure(&inst).unwrap()), sets_of(&inst));
    }

    #[test]
    fn min_over_supersets() {
        let inst = instance_from_pairs(2, "c", &[(&[1, 2], integer(3)), (&[1], integer(5))]).unwrap();
        let ext = extend_closure(&inst).unwrap();
        assert_eq!(
            sets_of(&ext),
            vec![
                (vec![1, 2], integer(3)),
                (vec![1], integer(3)),
                (vec![2], integer(3)),
            ]
        );
    }

    #[test]
    fn duplicates_merge_to_cheapest() {
        let inst = instance_from_pairs(
            3,
            "d",
            &[(&[1, 2, 3], integer(4)), (&[1, 2, 3], integer(2)), (&[2, 3], integer(7))],
        )
        .unwrap();
        let ext = extend_closure(&inst).unwrap();
        let got = sets_of(&ext);
        assert_eq!(got[0], (vec![1, 2, 3], integer(2)));
        assert_eq!(got[1], (vec![2, 3], integer(2)));
        assert_eq!(got.len(), 7);
        assert!(got.iter().all(|(_, w)| *w == integer(2)));
    }

    #[test]
    fn budget_guard() {
        let inst = instance_from_pairs(4, "b", &[(&[1, 2, 3, 4], integer(1))]).unwrap();
        assert!(matches!(
            extend_closure_with_budget(&inst, 10),
            Err(Error::ClosureTooLarge { needed: 15, budget: 10 })
        ));
        assert_eq!(extend_closure_with_budget(&inst, 15).unwrap().m(), 15);
    }
}
