use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Selection vector over the sets of an instance: bit `i` set means set `i`
/// (zero-based) is chosen.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    bits: FixedBitSet,
}

impl Solution {
    /// The empty selection `x^∅` of length `m`.
    pub fn empty(m: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(m),
        }
    }

    pub fn full(m: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(m);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_indices(m: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(m);
        for i in indices {
            s.bits.insert(i);
        }
        s
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Builds a selection from `0`/`1` flags, e.g. `&[1, 1, 0]`.
    pub fn from_flags(flags: &[u8]) -> Self {
        Self::from_bools(&flags.iter().map(|&f| f != 0).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of selected sets, `|x|`.
    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn flip(&mut self, i: usize) {
        self.bits.toggle(i);
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Number of positions where the two selections differ.
    pub fn hamming(&self, other: &Self) -> usize {
        self.bits.symmetric_difference_count(&other.bits)
    }

    pub fn check_len(&self, m: usize) -> Result<()> {
        if self.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: self.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn words(&self) -> &[usize] {
        self.bits.as_slice()
    }

    /// Overwrites `self` with `other` without reallocating.
    pub fn copy_from(&mut self, other: &Self) {
        self.bits.clone_from(&other.bits);
    }

    /// Lowercase hex of the integer whose bit `i` (least significant first)
    /// is selection bit `i`, zero-padded to `ceil(m / 4)` digits.
    pub fn to_hex(&self) -> String {
        let m = self.len();
        let digits = m.div_ceil(4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4).fold(0u32, |acc, b| {
                    let i = d * 4 + b;
                    acc | (((i < m && self.contains(i)) as u32) << b)
                });
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(hex: &str, m: usize) -> Result<Self> {
        let hex = hex.trim();
        let mut s = Self::empty(m);
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?} in {hex:?}")))?;
            for b in 0..4 {
                if nibble & (1 << b) != 0 {
                    let i = d * 4 + b;
                    if i >= m {
                        return Err(Error::Parse(format!(
                            "hex {hex:?} sets bit {i} beyond length {m}"
                        )));
                    }
                    s.insert(i);
                }
            }
        }
        Ok(s)
    }

    /// Lexicographic order on `(x_1, ..., x_m)` with `0 < 1`.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for i in 0..self.len().min(other.len()) {
            match (self.contains(i), other.contains(i)) {
                (false, true) => return std::cmp::Ordering::Less,
                (true, false) => return std::cmp::Ordering::Greater,
                _ => {}
            }
        }
        self.len().cmp(&other.len())
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.contains(i) as u8)?;
        }
        write!(f, ")")
    }
}
