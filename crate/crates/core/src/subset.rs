//! Bitmask subsets of `[p]` and the size guards for subset-indexed arrays.
//!
//! Bit `i` of a mask stands for component `i + 1`; external formats always
//! use sorted 1-based index lists.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute upper bound on `p` for dense subset arrays.
pub const HARD_MAX_P: usize = 26;
/// Default bound on `p` for coefficient algebra.
pub const DEFAULT_MAX_P: usize = 16;
/// Default bound on `p` for the exact realizability deciders.
pub const DEFAULT_REALIZE_MAX_P: usize = 14;
/// Environment variable overriding both soft bounds.
pub const MAX_P_ENV: &str = "TAILDEP_MAX_P";

fn env_override() -> Option<usize> {
    std::env::var(MAX_P_ENV).ok()?.trim().parse().ok()
}

/// Soft size limit for the coefficient algebra, never above [`HARD_MAX_P`].
pub fn max_p() -> usize {
    env_override().unwrap_or(DEFAULT_MAX_P).min(HARD_MAX_P)
}

/// Soft size limit for the LP deciders.
pub fn realize_max_p() -> usize {
    env_override()
        .unwrap_or(DEFAULT_REALIZE_MAX_P)
        .min(HARD_MAX_P)
}

pub(crate) fn check_dimension(p: usize, limit: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::EmptyDimension);
    }
    if p > limit {
        return Err(Error::DimensionTooLarge { p, limit });
    }
    Ok(())
}

/// A subset of `[p]` stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set `[p]`.
    pub fn full(p: usize) -> Self {
        Subset(((1u64 << p) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Subset((1 << i) | (1 << j))
    }

    /// Builds a subset from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    /// Builds a subset from 1-based indices, checking that each lies in `1..=p`.
    pub fn from_one_based(indices: &[usize], p: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > p {
                return Err(Error::MalformedInput(format!(
                    "index {i} outside 1..={p}"
                )));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Subset(mask))
    }

    /// Contiguous range of 0-based positions `lo..=hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        Subset(((1u64 << (hi + 1)) - (1u64 << lo)) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn complement(self, p: usize) -> Self {
        Subset(Subset::full(p).0 & !self.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// 0-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Sorted 1-based members, as used in every external format.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }

    /// Representative of the cut `{J, J^c}` containing component 1.
    pub fn canonical_cut(self, p: usize) -> Self {
        if self.contains(0) {
            self
        } else {
            self.complement(p)
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// All nonempty subsets of `[p]`, in increasing mask order.
pub fn nonempty_subsets(p: usize) -> impl Iterator<Item = Subset> {
    (1..=Subset::full(p).0).map(Subset)
}
