//! Subsets of the marked-point labels `{1..n}`, held as bitmasks.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of marked points.
pub const MAX_POINTS: usize = 24;

/// A subset of `{1..n}`; bit `i - 1` is set when label `i` belongs to it.
///
/// Ordering is by size first, then lexicographically on the sorted label
/// list, so `{1,2} < {1,3} < {2,3} < {1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The full set `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        Subset(if n == 0 { 0 } else { (1u32 << n) - 1 })
    }

    /// Builds a subset from 1-based labels, checking each lies in `1..=n`.
    /// Duplicates are collapsed.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I, n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for l in labels {
            if l == 0 || l > n {
                return Err(Error::InvalidLabel { label: l as i64, n });
            }
            bits |= 1 << (l - 1);
        }
        Ok(Subset(bits))
    }

    pub fn singleton(label: usize) -> Self {
        Subset(1 << (label - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: usize) -> bool {
        label >= 1 && self.0 & (1 << (label - 1)) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Labels in increasing order.
    pub fn labels(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    /// Whether every label is at most `n`.
    pub fn fits(self, n: usize) -> bool {
        self.0 >> n == 0
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(full);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == 0 { None } else { Some((c - 1) & full) };
            Some(Subset(c))
        })
    }
}

/// Every boundary index `S ⊆ {1..n}` with `|S| ≥ 2`, in canonical order.
pub fn boundary_subsets(n: usize) -> Vec<Subset> {
    let mut v: Vec<Subset> = (0..(1u32 << n))
        .map(Subset)
        .filter(|s| s.len() >= 2)
        .collect();
    v.sort();
    v
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.labels().cmp(other.labels()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.labels().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}
