//! Descent sets as small bitmasks.

use crate::error::{Error, Result};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

/// A subset of `{1, …, n−1}` attached to an ambient size `n`.
///
/// Bit `i − 1` of `mask` is set iff `i` belongs to the set. Used both for
/// computed descent sets and for the class labels `B` that select
/// permutations or paths by the descents of their inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSet {
    mask: u32,
    n: usize,
}

impl DescentSet {
    pub fn empty(n: usize) -> Self {
        DescentSet { mask: 0, n }
    }

    /// Builds a set from 1-based indices, rejecting anything outside
    /// `1..=n−1`.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0u32;
        for i in members {
            if i < 1 || i + 1 > n {
                return Err(Error::DescentOutOfRange {
                    index: i,
                    max: n.saturating_sub(1),
                });
            }
            mask |= 1 << (i - 1);
        }
        Ok(DescentSet { mask, n })
    }

    /// Builds a set directly from a bitmask over `{1, …, n−1}`.
    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        if n == 0 || mask >> (n - 1) != 0 {
            return Err(Error::DescentOutOfRange {
                index: 32 - mask.leading_zeros() as usize,
                max: n.saturating_sub(1),
            });
        }
        Ok(DescentSet { mask, n })
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u32) -> Self {
        debug_assert!(n >= 1 && mask >> (n - 1) == 0);
        DescentSet { mask, n }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.mask & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(|&i| self.mask & (1 << (i - 1)) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() as usize + 1)
    }

    pub fn max(&self) -> Option<usize> {
        (self.mask != 0).then(|| 32 - self.mask.leading_zeros() as usize)
    }

    /// Intersection with `{1, …, k}`, keeping the ambient size.
    pub fn restrict(&self, k: usize) -> DescentSet {
        DescentSet {
            mask: self.mask & low_bits(k),
            n: self.n,
        }
    }

    /// Intersection with `{1, …, new_n − 1}` under a new ambient size.
    pub fn truncate(&self, new_n: usize) -> DescentSet {
        DescentSet {
            mask: self.mask & low_bits(new_n.saturating_sub(1)),
            n: new_n,
        }
    }
}

/// Mask with the lowest `k` bits set.
pub(crate) fn low_bits(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for DescentSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_bounds() {
        let d = DescentSet::new(5, [1, 4]).unwrap();
        assert!(d.contains(1) && d.contains(4));
        assert!(!d.contains(2) && !d.contains(5));
        assert_eq!(d.to_vec(), vec![1, 4]);
        assert_eq!(d.min(), Some(1));
        assert_eq!(d.max(), Some(4));
        assert_eq!(d.to_string(), "{1,4}");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(DescentSet::new(5, [5]).is_err());
        assert!(DescentSet::new(1, [1]).is_err());
        assert!(DescentSet::new(5, [0]).is_err());
    }

    #[test]
    fn restrict_and_truncate() {
        let d = DescentSet::new(6, [2, 4, 5]).unwrap();
        assert_eq!(d.restrict(4).to_vec(), vec![2, 4]);
        assert_eq!(d.restrict(4).ambient(), 6);
        let t = d.truncate(4);
        assert_eq!(t.to_vec(), vec![2]);
        assert_eq!(t.ambient(), 4);
    }

    #[test]
    fn empty_set() {
        let d = DescentSet::empty(3);
        assert!(d.is_empty());
        assert_eq!(d.min(), None);
        assert_eq!(d.max(), None);
        assert_eq!(d.to_string(), "{}");
    }
}
