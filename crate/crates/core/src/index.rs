//! Strictly increasing index tuples labelling the basis `e_{i₁…i_k}`.
//!
//! Indices are stored 0-based. Text and JSON formats use 1-based labels, as
//! in `e_{1,2}`; see [`MultiIndex::from_one_based`].

use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing tuple of 0-based indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Validates strict increase and the bound `< m`.
    pub fn new(indices: Vec<usize>, m: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "indices {indices:?} are not strictly increasing"
            )));
        }
        if indices.last().is_some_and(|&i| i >= m) {
            return Err(Error::InvalidIndex(format!(
                "index {} out of range for dimension {m}",
                indices.last().unwrap() + 1
            )));
        }
        Ok(Self(indices))
    }

    pub fn from_one_based(labels: &[usize], m: usize) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidIndex("labels are 1-based".into()));
        }
        Self::new(labels.iter().map(|i| i - 1).collect(), m)
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Lexicographic rank among all `grade`-subsets of `0..m`.
    pub fn rank(&self, m: usize) -> usize {
        let k = self.0.len();
        let mut r = 0;
        let mut prev = 0;
        for (pos, &c) in self.0.iter().enumerate() {
            for v in prev..c {
                r += binomial(m - 1 - v, k - 1 - pos);
            }
            prev = c + 1;
        }
        r
    }

    /// Inverse of [`MultiIndex::rank`].
    pub fn unrank(m: usize, k: usize, mut r: usize) -> Self {
        let mut out = Vec::with_capacity(k);
        let mut v = 0;
        for pos in 0..k {
            loop {
                let block = binomial(m - 1 - v, k - 1 - pos);
                if r < block {
                    break;
                }
                r -= block;
                v += 1;
            }
            out.push(v);
            v += 1;
        }
        Self(out)
    }

    /// Sorted complement in `0..m`.
    pub fn complement(&self, m: usize) -> Self {
        Self((0..m).filter(|i| !self.contains(*i)).collect())
    }

    /// `self ∪ other` with the parity of the merge permutation, or `None` if
    /// the tuples intersect.
    pub fn merge(&self, other: &Self) -> Option<(Self, i8)> {
        let mut seq = self.0.clone();
        seq.extend_from_slice(&other.0);
        sort_with_sign(&seq)
    }

    /// `self \ other` for `other ⊆ self`, as `(rest, s)` with
    /// `e_rest ∧ e_other = s · e_self`.
    pub fn remove(&self, other: &Self) -> Option<(Self, i8)> {
        if !other.0.iter().all(|i| self.contains(*i)) {
            return None;
        }
        let rest = Self(self.0.iter().copied().filter(|i| !other.contains(*i)).collect());
        let (_, s) = rest.merge(other)?;
        Some((rest, s))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "e{{{}}}", labels.join(","))
    }
}

/// Sorts a sequence of distinct indices, returning the sign of the sorting
/// permutation; `None` if an index repeats.
pub fn sort_with_sign(seq: &[usize]) -> Option<(MultiIndex, i8)> {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((MultiIndex(v), sign))
}

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(binomial(m, k));
    if k > m {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(MultiIndex(cur.clone()));
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < m - k + p) else {
            break;
        };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    out
}
