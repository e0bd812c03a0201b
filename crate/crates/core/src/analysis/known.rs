use crate::error::{Error, Result};
use crate::instance::ElementSet;
use crate::weight::Rational;
use num_traits::Zero;

/// An optimal cover made of pairwise disjoint sets of equal size, with the
/// column map `M*(e)` (the optimal set containing `e`) and `w*(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownOptimum {
    n: usize,
    sets: Vec<Vec<usize>>,
    weights: Vec<Rational>,
    value: Rational,
    column_of: Vec<usize>,
}

impl KnownOptimum {
    /// Validates that the sets partition `[n]` into blocks of one size and
    /// that every weight is positive.
    pub fn new(n: usize, columns: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("known optimum: {msg}"));
        if columns.is_empty() {
            return Err(bad("no sets".into()));
        }
        let k = columns[0].0.len();
        let mut column_of = vec![usize::MAX; n];
        let mut sets = Vec::with_capacity(columns.len());
        let mut weights = Vec::with_capacity(columns.len());
        let mut value = Rational::zero();
        for (c, (mut elements, w)) in columns.into_iter().enumerate() {
            elements.sort_unstable();
            if elements.len() != k {
                return Err(bad(format!("set {c} has size {} instead of {k}", elements.len())));
            }
            if w <= Rational::zero() {
                return Err(bad(format!("set {c} has non-positive weight")));
            }
            for &e in &elements {
                if e == 0 || e > n {
                    return Err(bad(format!("element {e} outside [1, {n}]")));
                }
                if column_of[e - 1] != usize::MAX {
                    return Err(bad(format!("element {e} appears in two sets")));
                }
                column_of[e - 1] = c;
            }
            value += &w;
            sets.push(elements);
            weights.push(w);
        }
        if let Some(e) = column_of.iter().position(|&c| c == usize::MAX) {
            return Err(bad(format!("element {} is not covered", e + 1)));
        }
        Ok(Self {
            n,
            sets,
            weights,
            value,
            column_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Common size of the optimal sets.
    pub fn k(&self) -> usize {
        self.sets[0].len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// Index of `M*(e)`.
    pub fn column_of(&self, e: usize) -> usize {
        self.column_of[e - 1]
    }

    /// `w*(e) = w(M*(e))`.
    pub fn weight_of_column(&self, e: usize) -> &Rational {
        &self.weights[self.column_of(e)]
    }

    pub fn column_mask(&self, c: usize) -> ElementSet {
        ElementSet::from_elements(self.n, self.sets[c].iter().copied())
    }
}
