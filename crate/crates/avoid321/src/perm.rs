//! Permutations in one-line notation and their statistics.
//!
//! Values are 1-based everywhere: `Permutation::new(vec![2, 5, 1, 3, 4])`
//! is the word π with π(1) = 2. The enumeration of the 321-avoiding set
//! `T_n` runs in output-linear time by growing words one digit at a time:
//! the largest digit may only be inserted after the last descent.

use crate::descent::{low_bits, DescentSet};
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_N;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n` with `n ≥ 1`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v < 1 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// One-line notation as a slice of 1-based values.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// π(i) for a 1-based position.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// The inverse permutation: `q` with `q(π(i)) = i`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values: inv }
    }

    /// Number of pairs `i < j` with `π(i) > π(j)`.
    pub fn inv(&self) -> usize {
        let mut count = 0;
        for i in 0..self.values.len() {
            for j in i + 1..self.values.len() {
                if self.values[i] > self.values[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `(−1)^inv(π)` as ±1.
    pub fn sign(&self) -> i64 {
        if self.inv() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Last descent: `max{i | π(i) > π(i+1)}`, with 0 for the identity.
    pub fn ldes(&self) -> usize {
        ldes_of(&self.values)
    }

    /// Position of the largest value, `π⁻¹(n)`; always in `1..=n`.
    pub fn lind(&self) -> usize {
        let n = self.values.len() as u32;
        self.values.iter().position(|&v| v == n).unwrap() + 1
    }

    /// `{i | π(i) > π(i+1)}` as a set over `{1, …, n−1}`.
    pub fn descent_set(&self) -> DescentSet {
        let mut mask = 0u32;
        for i in 1..self.values.len() {
            if self.values[i - 1] > self.values[i] {
                mask |= 1 << (i - 1);
            }
        }
        DescentSet::from_mask_unchecked(self.values.len(), mask)
    }

    /// Descent set of the inverse, `Des(π⁻¹)`.
    pub fn descent_set_inverse(&self) -> DescentSet {
        self.inverse().descent_set()
    }

    /// True iff no `i < j < k` has `π(i) > π(j) > π(k)`.
    ///
    /// Linear scan: position `j` is the middle of a 321 pattern exactly
    /// when the maximum strictly before `j` exceeds `π(j)` and the
    /// minimum strictly after `j` is below it.
    pub fn is_321_avoiding(&self) -> bool {
        let n = self.values.len();
        if n < 3 {
            return true;
        }
        let mut suffix_min = vec![u32::MAX; n + 1];
        for j in (0..n).rev() {
            suffix_min[j] = suffix_min[j + 1].min(self.values[j]);
        }
        let mut prefix_max = 0u32;
        for j in 0..n {
            if prefix_max > self.values[j] && self.values[j] > suffix_min[j + 1] {
                return false;
            }
            prefix_max = prefix_max.max(self.values[j]);
        }
        true
    }

    /// Compact digit string for `n ≤ 9`, comma-separated beyond.
    pub fn to_compact_string(&self) -> String {
        if self.values.len() <= 9 {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

fn ldes_of(values: &[u32]) -> usize {
    for i in (1..values.len()).rev() {
        if values[i - 1] > values[i] {
            return i;
        }
    }
    0
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses either a compact digit word ("25134", values ≤ 9) or a
    /// comma-separated list ("10,2,1,…").
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad value {tok:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Depth-first stream over `T_n` in insertion order.
///
/// A word of length m extends to length m + 1 by inserting the digit
/// m + 1 in any slot `k` with `ldes ≤ k ≤ m` (counting slots from 0);
/// children are visited with `k` ascending. The resulting leaf order is
/// the lexicographic order of insertion-slot sequences.
pub struct TnIter {
    target: usize,
    stack: Vec<Vec<u32>>,
}

impl Iterator for TnIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while let Some(word) = self.stack.pop() {
            if word.len() == self.target {
                return Some(Permutation::from_vec_unchecked(word));
            }
            let m = word.len();
            let digit = m as u32 + 1;
            // Reverse push so that the smallest admissible slot is on top.
            for k in (ldes_of(&word)..=m).rev() {
                let mut child = Vec::with_capacity(m + 1);
                child.extend_from_slice(&word[..k]);
                child.push(digit);
                child.extend_from_slice(&word[k..]);
                self.stack.push(child);
            }
        }
        None
    }
}

/// Streams `T_n` under the default size ceiling.
pub fn enumerate_t(n: usize) -> Result<TnIter> {
    enumerate_t_with_bound(n, DEFAULT_MAX_N)
}

/// Streams `T_n`, refusing `n` above `bound` or `n = 0`.
pub fn enumerate_t_with_bound(n: usize, bound: usize) -> Result<TnIter> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > bound {
        return Err(Error::ResourceLimit { n, bound });
    }
    Ok(TnIter {
        target: n,
        stack: vec![vec![1]],
    })
}

/// Streams the class `T_n(B) = {π ∈ T_n | Des(π⁻¹) ∩ [n−2] = B}`.
///
/// `B` must be a subset of `{1, …, n−2}`; whether n−1 is an inverse
/// descent is deliberately not constrained.
pub fn enumerate_t_class(
    n: usize,
    class: &DescentSet,
) -> Result<impl Iterator<Item = Permutation> + '_> {
    enumerate_t_class_with_bound(n, class, DEFAULT_MAX_N)
}

pub fn enumerate_t_class_with_bound(
    n: usize,
    class: &DescentSet,
    bound: usize,
) -> Result<impl Iterator<Item = Permutation> + '_> {
    let window = low_bits(n.saturating_sub(2));
    if class.mask() & !window != 0 {
        return Err(Error::InvalidArgument(format!(
            "class {class} is not a subset of {{1, …, {}}}",
            n.saturating_sub(2)
        )));
    }
    let target = class.mask();
    Ok(enumerate_t_with_bound(n, bound)?
        .filter(move |p| p.descent_set_inverse().mask() & window == target))
}


#[cfg(test)]
mod tests {
    use super::testutil::{all_permutations, contains_321_naive};
    use super::*;
    use crate::catalan;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![2, 5, 1, 3, 4]).is_ok());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("123").inverse(), p("123"));
        assert_eq!(p("25134").inverse(), p("31452"));
        assert_eq!(p("321").inverse(), p("321"));
    }

    #[test]
    fn inverse_is_involution() {
        for n in 1..=6 {
            for q in all_permutations(n) {
                assert_eq!(q.inverse().inverse(), q);
            }
        }
    }

    #[test]
    fn inv_examples() {
        assert_eq!(p("123").inv(), 0);
        assert_eq!(p("25134").inv(), 4);
        assert_eq!(p("321").inv(), 3);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(p("123").sign(), 1);
        assert_eq!(p("25134").sign(), 1);
        assert_eq!(p("213").sign(), -1);
    }

    #[test]
    fn ldes_examples() {
        assert_eq!(p("123").ldes(), 0);
        assert_eq!(p("25134").ldes(), 2);
        assert_eq!(p("132").ldes(), 2);
        assert_eq!(p("1").ldes(), 0);
    }

    #[test]
    fn lind_examples() {
        assert_eq!(p("123").lind(), 3);
        assert_eq!(p("25134").lind(), 2);
        assert_eq!(p("312").lind(), 1);
    }

    #[test]
    fn descent_set_examples() {
        assert!(p("123").descent_set().is_empty());
        assert_eq!(p("25134").descent_set().to_vec(), vec![2]);
        assert_eq!(p("25134").descent_set_inverse().to_vec(), vec![1, 4]);
        assert_eq!(p("31452").descent_set().to_vec(), vec![1, 4]);
    }

    #[test]
    fn avoidance_examples() {
        assert!(p("25134").is_321_avoiding());
        assert!(!p("321").is_321_avoiding());
        assert!(Permutation::identity(8).is_321_avoiding());
    }

    #[test]
    fn avoidance_matches_cubic_scan() {
        for n in 1..=7 {
            for q in all_permutations(n) {
                assert_eq!(
                    q.is_321_avoiding(),
                    !contains_321_naive(&q),
                    "mismatch at {q}"
                );
            }
        }
    }

    #[test]
    fn enumeration_order_n3() {
        let words: Vec<String> = enumerate_t(3).unwrap().map(|q| q.to_string()).collect();
        assert_eq!(words, ["231", "213", "312", "132", "123"]);
    }

    #[test]
    fn enumeration_n1() {
        let all: Vec<_> = enumerate_t(1).unwrap().collect();
        assert_eq!(all, vec![Permutation::identity(1)]);
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..=10 {
            assert_eq!(enumerate_t(n).unwrap().count() as u64, catalan(n));
        }
    }

    #[test]
    fn enumeration_matches_filter() {
        for n in 1..=8 {
            let mut filtered: Vec<Permutation> = all_permutations(n)
                .into_iter()
                .filter(|q| q.is_321_avoiding())
                .collect();
            filtered.sort();
            let mut streamed: Vec<Permutation> = enumerate_t(n).unwrap().collect();
            streamed.sort();
            streamed.dedup();
            assert_eq!(streamed, filtered);
        }
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(
            enumerate_t(17),
            Err(Error::ResourceLimit { n: 17, bound: 16 })
        ));
        assert!(enumerate_t_with_bound(17, 18).is_ok());
        assert!(enumerate_t(0).is_err());
    }

    #[test]
    fn class_enumeration() {
        let b = DescentSet::empty(2);
        let members: Vec<String> = enumerate_t_class(2, &b)
            .unwrap()
            .map(|q| q.to_string())
            .collect();
        assert_eq!(members.len(), 2);
        assert!(members.contains(&"12".to_string()) && members.contains(&"21".to_string()));

        // Classes partition T_n.
        for n in 2..=7 {
            let mut total = 0;
            for mask in 0..1u32 << (n - 2) {
                let b = DescentSet::from_mask(n, mask).unwrap();
                total += enumerate_t_class(n, &b).unwrap().count() as u64;
            }
            assert_eq!(total, catalan(n));
        }
    }

    #[test]
    fn class_rejects_large_members() {
        let b = DescentSet::new(4, [3]).unwrap(); // 3 > n−2 = 2
        assert!(enumerate_t_class(4, &b).is_err());
    }

    #[test]
    fn brute_force_class_check_n3() {
        // B = {} over [1]: inverses with no descent at 1.
        let b = DescentSet::empty(3);
        let got: Vec<String> = enumerate_t_class(3, &b)
            .unwrap()
            .map(|q| q.to_string())
            .collect();
        let mut expected: Vec<String> = enumerate_t(3)
            .unwrap()
            .filter(|q| !q.descent_set_inverse().contains(1))
            .map(|q| q.to_string())
            .collect();
        expected.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, expected);
    }

    #[test]
    fn last_digit_dichotomy() {
        // For π ∈ T_n, exactly one holds:
        //   ldes(π) = π⁻¹(n−1) < n−1   or   ldes(π) < π⁻¹(n−1) = n−1.
        for n in 2..=9 {
            for q in enumerate_t(n).unwrap() {
                let pos = q.inverse().at(n - 1) as usize;
                let first = q.ldes() == pos && pos < n - 1;
                let second = q.ldes() < pos && pos == n - 1;
                assert!(first ^ second, "dichotomy fails at {q}");
            }
        }
    }

    #[test]
    fn lind_equals_ldes_unless_fixed_last() {
        for n in 1..=9 {
            for q in enumerate_t(n).unwrap() {
                if q.at(n) != n as u32 {
                    assert_eq!(q.lind(), q.ldes(), "at {q}");
                } else {
                    assert_eq!(q.lind(), n);
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(p("25134").values(), &[2, 5, 1, 3, 4]);
        let long: Permutation = "10,2,1,3,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(long.n(), 10);
        assert_eq!(long.to_compact_string(), "10,2,1,3,4,5,6,7,8,9");
        assert!("".parse::<Permutation>().is_err());
        assert!("120".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn json_form() {
        let v = serde_json::to_string(&p("25134")).unwrap();
        assert_eq!(v, "[2,5,1,3,4]");
    }
}
