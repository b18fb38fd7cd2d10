//! Dyck paths of length 2n and their peak statistics.
//!
//! A path is 2n steps of ±1 with nonnegative prefix sums and total sum
//! zero. Steps are packed into one machine word (bit i−1 set ⟺ step i
//! is +1), which keeps paths `Copy` and enumeration allocation-free;
//! lengths up to 2n = 64 cover everything the enumeration bound allows.
//!
//! Peaks strictly before the midpoint are the path's descents; peaks
//! strictly after it, reflected, are the descents of the inverse path.

use crate::descent::{low_bits, DescentSet};
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_N;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

const MAX_HALF_LENGTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    up: u64,
    half: u8,
}

impl DyckPath {
    /// Validates a ±1 step sequence.
    pub fn new(steps: &[i8]) -> Result<Self> {
        if steps.is_empty() || steps.len() % 2 != 0 {
            return Err(Error::InvalidDyckPath(format!(
                "length {} is not a positive even number",
                steps.len()
            )));
        }
        let half = steps.len() / 2;
        if half > MAX_HALF_LENGTH {
            return Err(Error::ResourceLimit {
                n: half,
                bound: MAX_HALF_LENGTH,
            });
        }
        let mut up = 0u64;
        let mut height = 0i32;
        for (i, &s) in steps.iter().enumerate() {
            match s {
                1 => {
                    up |= 1 << i;
                    height += 1;
                }
                -1 => height -= 1,
                other => {
                    return Err(Error::InvalidDyckPath(format!("step value {other}")));
                }
            }
            if height < 0 {
                return Err(Error::InvalidDyckPath(format!(
                    "prefix sum negative after step {}",
                    i + 1
                )));
            }
        }
        if height != 0 {
            return Err(Error::InvalidDyckPath("total sum nonzero".into()));
        }
        Ok(DyckPath {
            up,
            half: half as u8,
        })
    }

    /// Builds the path of size `n` whose +1 steps sit exactly at the given
    /// 1-based positions.
    pub fn from_up_positions(n: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut steps = vec![-1i8; 2 * n];
        for p in positions {
            if p < 1 || p > 2 * n {
                return Err(Error::InvalidDyckPath(format!("up position {p} out of range")));
            }
            steps[p - 1] = 1;
        }
        DyckPath::new(&steps)
    }

    /// The unimodal path `+…+−…−`.
    pub fn unimodal(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_HALF_LENGTH);
        DyckPath {
            up: low_bits(n) as u64 | (low_bits(n.saturating_sub(32)) as u64) << 32,
            half: n as u8,
        }
    }

    /// Semilength n; the path has 2n steps.
    pub fn n(&self) -> usize {
        self.half as usize
    }

    /// Number of steps, always even and ≥ 2.
    pub fn len(&self) -> usize {
        2 * self.half as usize
    }

    /// Step i for 1-based `i`, as ±1.
    pub fn step(&self, i: usize) -> i8 {
        debug_assert!(i >= 1 && i <= self.len());
        if self.up >> (i - 1) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn steps(&self) -> Vec<i8> {
        (1..=self.len()).map(|i| self.step(i)).collect()
    }

    /// 1-based indices `i ≤ 2n−1` with step i = +1 and step i+1 = −1.
    pub fn peaks(&self) -> Vec<usize> {
        let mask = self.peak_mask();
        (1..self.len()).filter(|&i| mask >> (i - 1) & 1 == 1).collect()
    }

    fn peak_mask(&self) -> u64 {
        // Bit j ⟺ up at j, down at j+1. The final step is always −1 in a
        // valid path, so no spurious peak appears at position 2n.
        self.up & !(self.up >> 1)
    }

    /// Peaks strictly before the midpoint: `{i ≤ n−1 | i ∈ Peak}`.
    pub fn descent_set(&self) -> DescentSet {
        let n = self.n();
        let mask = self.peak_mask() & low_bits(n.saturating_sub(1)) as u64;
        DescentSet::from_mask_unchecked(n, mask as u32)
    }

    /// Step-reversed, sign-flipped path `(−p_2n, …, −p_1)`.
    pub fn inverse(&self) -> DyckPath {
        let len = self.len();
        let mut up = 0u64;
        for i in 1..=len {
            // New step i is the negation of old step 2n+1−i.
            if self.up >> (len - i) & 1 == 0 {
                up |= 1 << (i - 1);
            }
        }
        DyckPath {
            up,
            half: self.half,
        }
    }

    /// Descents of the inverse path, computed from the definition
    /// `{i ≤ n−1 | step(2n−i) = +1, step(2n−i+1) = −1}`.
    pub fn descent_set_inverse(&self) -> DescentSet {
        let n = self.n();
        let peaks = self.peak_mask();
        let mut mask = 0u32;
        for i in 1..n {
            let j = 2 * n - i;
            if peaks >> (j - 1) & 1 == 1 {
                mask |= 1 << (i - 1);
            }
        }
        DescentSet::from_mask_unchecked(n, mask)
    }

    /// Last descent: `max Des(p)`, 0 for the unimodal path.
    pub fn ldes(&self) -> usize {
        self.descent_set().max().unwrap_or(0)
    }

    /// Last peak at or before the midpoint: `max{i ≤ n | i ∈ Peak}`.
    ///
    /// Every Dyck path has a peak at or before n (the first descent step
    /// is preceded by an ascent), so the maximum exists.
    pub fn lind(&self) -> usize {
        let mask = self.peak_mask() & low_bits(self.n()) as u64;
        assert!(mask != 0, "a Dyck path always has a peak at or before n");
        64 - mask.leading_zeros() as usize
    }

    /// Number of trailing −1 steps: `2n − max Peak(p)`.
    pub fn tail(&self) -> usize {
        let mask = self.peak_mask();
        debug_assert!(mask != 0);
        self.len() - (64 - mask.leading_zeros() as usize)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.step(i) == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps: Vec<i8> = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '\u{2212}' => Ok(-1),
                other => Err(Error::Parse(format!("bad step character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        DyckPath::new(&steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in 1..=self.len() {
            seq.serialize_element(&self.step(i))?;
        }
        seq.end()
    }
}

/// Depth-first stream over all Dyck paths of size n, lexicographic with
/// `+` before `−`.
pub struct DyckIter {
    n: usize,
    // (prefix bits, steps placed, up-steps placed)
    stack: Vec<(u64, u8, u8)>,
}

impl Iterator for DyckIter {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        while let Some((up, placed, ups)) = self.stack.pop() {
            let placed = placed as usize;
            let ups = ups as usize;
            if placed == 2 * self.n {
                return Some(DyckPath {
                    up,
                    half: self.n as u8,
                });
            }
            let downs = placed - ups;
            // Push the '−' child first so the '+' child is explored first.
            if downs < ups {
                self.stack.push((up, placed as u8 + 1, ups as u8));
            }
            if ups < self.n {
                self.stack
                    .push((up | 1 << placed, placed as u8 + 1, ups as u8 + 1));
            }
        }
        None
    }
}

/// Streams all Dyck paths of size n under the default ceiling.
pub fn enumerate_paths(n: usize) -> Result<DyckIter> {
    enumerate_paths_with_bound(n, DEFAULT_MAX_N)
}

pub fn enumerate_paths_with_bound(n: usize, bound: usize) -> Result<DyckIter> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > bound || n > MAX_HALF_LENGTH {
        return Err(Error::ResourceLimit {
            n,
            bound: bound.min(MAX_HALF_LENGTH),
        });
    }
    Ok(DyckIter {
        n,
        stack: vec![(0, 0, 0)],
    })
}

/// Streams the class `P_n(B) = {p | Des(p⁻¹) ∩ [n−2] = B}`.
pub fn enumerate_paths_class(
    n: usize,
    class: &DescentSet,
) -> Result<impl Iterator<Item = DyckPath> + '_> {
    let window = low_bits(n.saturating_sub(2));
    if class.mask() & !window != 0 {
        return Err(Error::InvalidArgument(format!(
            "class {class} is not a subset of {{1, …, {}}}",
            n.saturating_sub(2)
        )));
    }
    let target = class.mask();
    Ok(enumerate_paths(n)?
        .filter(move |p| p.descent_set_inverse().mask() & window == target))
}
