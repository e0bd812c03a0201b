//! Weighted set cover instances `(n, w, C, U)` over the universe `U = [n]`.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::solution::Solution;
use crate::weight::{common_denominator, Rational, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSet<W> {
    /// Elements of `[n]`, sorted ascending, no duplicates.
    pub elements: Vec<usize>,
    pub weight: W,
}

/// Subset of the universe `[n]`. Elements are 1-based in every public
/// method; internally element `e` is bit `e - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn universe(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.bits.insert_range(..);
        s
    }

    /// Size of the universe this set lives in.
    pub fn universe_size(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && self.bits.contains(e - 1)
    }

    pub fn insert(&mut self, e: usize) {
        self.bits.insert(e - 1);
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones().map(|i| i + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn union_with(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    /// `|self - other|`
    pub fn difference_count(&self, other: &Self) -> usize {
        self.bits.difference_count(&other.bits)
    }

    pub fn intersection_count(&self, other: &Self) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// Immutable, validated instance. Safe to share across threads.
#[derive(Clone, Debug)]
pub struct SetCoverInstance<W> {
    n: usize,
    name: String,
    sets: Vec<WeightedSet<W>>,
    masks: Vec<ElementSet>,
    /// Masks flattened into `words` blocks per set for the evaluation loop.
    flat: Vec<usize>,
    words: usize,
    k: usize,
}

impl<W: Weight> SetCoverInstance<W> {
    /// Validates and builds an instance. Element lists are sorted and
    /// deduplicated; every set must be nonempty, inside `[n]` and of positive
    /// weight, and the sets together must cover `[n]`.
    pub fn new(
        n: usize,
        name: impl Into<String>,
        sets: impl IntoIterator<Item = (Vec<usize>, W)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("universe size n must be positive".into()));
        }
        let mut out = Vec::new();
        for (i, (mut elements, weight)) in sets.into_iter().enumerate() {
            elements.sort_unstable();
            elements.dedup();
            if elements.is_empty() {
                return Err(Error::InvalidInstance(format!("set {} is empty", i + 1)));
            }
            if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > n) {
                return Err(Error::InvalidInstance(format!(
                    "set {} contains element {e} outside [1, {n}]",
                    i + 1
                )));
            }
            if weight <= W::zero() {
                return Err(Error::InvalidInstance(format!(
                    "set {} has non-positive weight {weight}",
                    i + 1
                )));
            }
            out.push(WeightedSet { elements, weight });
        }
        if out.is_empty() {
            return Err(Error::InvalidInstance("collection has no sets".into()));
        }
        let masks: Vec<ElementSet> = out
            .iter()
            .map(|s| ElementSet::from_elements(n, s.elements.iter().copied()))
            .collect();
        let mut all = ElementSet::empty(n);
        for mask in &masks {
            all.union_with(mask);
        }
        if !all.is_full() {
            let missing: Vec<usize> = ElementSet::universe(n).difference(&all).to_vec();
            return Err(Error::InvalidInstance(format!(
                "elements {missing:?} are not covered by any set"
            )));
        }
        let words = masks[0].bits.as_slice().len();
        let flat = masks.iter().flat_map(|m| m.bits.as_slice().iter().copied()).collect();
        let k = out.iter().map(|s| s.elements.len()).max().unwrap_or(0);
        Ok(Self {
            n,
            name: name.into(),
            sets: out,
            masks,
            flat,
            words,
            k,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of sets.
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Largest set cardinality.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn sets(&self) -> &[WeightedSet<W>] {
        &self.sets
    }

    pub fn weight(&self, i: usize) -> &W {
        &self.sets[i].weight
    }

    pub fn elements(&self, i: usize) -> &[usize] {
        &self.sets[i].elements
    }

    pub fn mask(&self, i: usize) -> &ElementSet {
        &self.masks[i]
    }

    pub fn max_weight(&self) -> &W {
        self.sets.iter().map(|s| &s.weight).max().expect("nonempty")
    }

    pub fn total_weight(&self) -> W {
        let mut acc = W::zero();
        for s in &self.sets {
            acc += &s.weight;
        }
        acc
    }

    pub fn empty_solution(&self) -> Solution {
        Solution::empty(self.m())
    }

    /// `f(x) = w · x`, the total weight of the selected sets.
    pub fn cost(&self, x: &Solution) -> Result<W> {
        x.check_len(self.m())?;
        Ok(self.cost_unchecked(x))
    }

    pub(crate) fn cost_unchecked(&self, x: &Solution) -> W {
        let mut acc = W::zero();
        for i in x.ones() {
            acc += &self.sets[i].weight;
        }
        acc
    }

    /// `R(x)`, the union of the selected sets.
    pub fn covered(&self, x: &Solution) -> Result<ElementSet> {
        x.check_len(self.m())?;
        let mut r = ElementSet::empty(self.n);
        for i in x.ones() {
            r.union_with(&self.masks[i]);
        }
        Ok(r)
    }

    pub fn is_feasible(&self, x: &Solution) -> Result<bool> {
        Ok(self.covered(x)?.is_full())
    }

    /// Number of elements not covered by `x`.
    pub fn uncovered_count(&self, x: &Solution) -> Result<usize> {
        Ok(self.n - self.covered(x)?.len())
    }

    /// Cost and covered-element count in one pass over the flattened masks.
    /// `scratch` is reused between calls to avoid allocation.
    pub(crate) fn evaluate(&self, x: &Solution, scratch: &mut Vec<usize>) -> (W, usize) {
        let words = self.words;
        scratch.clear();
        scratch.resize(words, 0);
        let mut cost = W::zero();
        for i in x.ones() {
            cost += &self.sets[i].weight;
            let block = &self.flat[i * words..(i + 1) * words];
            for (acc, &w) in scratch.iter_mut().zip(block) {
                *acc |= w;
            }
        }
        let covered = scratch.iter().map(|w| w.count_ones() as usize).sum();
        (cost, covered)
    }

    /// Same instance with weights mapped through `f`.
    pub fn try_map_weights<V: Weight>(
        &self,
        mut f: impl FnMut(&W) -> Option<V>,
    ) -> Option<SetCoverInstance<V>> {
        let sets = self
            .sets
            .iter()
            .map(|s| Some(WeightedSet {
                elements: s.elements.clone(),
                weight: f(&s.weight)?,
            }))
            .collect::<Option<Vec<_>>>()?;
        Some(SetCoverInstance {
            n: self.n,
            name: self.name.clone(),
            sets,
            masks: self.masks.clone(),
            flat: self.flat.clone(),
            words: self.words,
            k: self.k,
        })
    }

    pub fn to_rational(&self) -> SetCoverInstance<Rational> {
        self.try_map_weights(|w| Some(w.to_rational())).expect("rational conversion is total")
    }
}

impl SetCoverInstance<Rational> {
    /// Rescales all weights by the least common denominator `D` so they become
    /// integers of type `V`. Returns the scaled instance and `D`; costs of the
    /// scaled instance divided by `D` are the original costs. Fails when some
    /// reachable penalized fitness value would not fit in `V`.
    pub fn scaled<V: Weight>(&self) -> Option<(SetCoverInstance<V>, BigInt)> {
        let d = common_denominator(self.sets.iter().map(|s| &s.weight));
        let d_rat = Rational::from_integer(d.clone());
        // The largest value the penalized (1+1)-EA fitness can take.
        let bound = (self.total_weight()
            + self.max_weight() * Rational::from_integer(BigInt::from(self.n * self.n)))
            * &d_rat;
        V::from_rational(&bound.ceil())?;
        let scaled = self.try_map_weights(|w| V::from_rational(&(w * &d_rat)))?;
        Some((scaled, d))
    }
}

/// Builds an instance from `(elements, weight)` pairs given as rationals.
pub fn instance_from_pairs(
    n: usize,
    name: &str,
    sets: &[(&[usize], Rational)],
) -> Result<SetCoverInstance<Rational>> {
    SetCoverInstance::new(n, name, sets.iter().map(|(e, w)| (e.to_vec(), w.clone())))
}

/// True when every weight is positive, every set nonempty and the union is
/// `[n]`. Instances are validated at construction, so this always holds for
/// a constructed value; it exists for generator self-checks.
pub fn satisfies_invariants<W: Weight>(inst: &SetCoverInstance<W>) -> bool {
    let mut all = ElementSet::empty(inst.n());
    for (i, s) in inst.sets().iter().enumerate() {
        if s.elements.is_empty() || s.weight <= W::zero() {
            return false;
        }
        if s.elements.iter().any(|&e| e == 0 || e > inst.n()) {
            return false;
        }
        all.union_with(inst.mask(i));
    }
    all.is_full() && inst.k() == inst.sets().iter().map(|s| s.elements.len()).max().unwrap()
}
