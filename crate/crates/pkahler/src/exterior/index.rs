//! Increasing multi-indices and the sign bookkeeping of the wedge product.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ExteriorError;

/// A strictly increasing tuple of indices in `1..=n`.
///
/// Basis monomials are always written with canonical (lexicographically
/// ordered) multi-indices; all reordering signs are pushed into coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self, ExteriorError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i == 0) {
            return Err(ExteriorError::BadIndex(format!(
                "multi-index must be strictly increasing and 1-based, got {indices:?}"
            )));
        }
        Ok(MultiIndex(indices))
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `(1, 2, …, n)`.
    pub fn full(n: usize) -> Self {
        MultiIndex((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max_index(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    /// Complement inside `1..=n`, in increasing order.
    pub fn complement(&self, n: usize) -> MultiIndex {
        MultiIndex((1..=n).filter(|i| !self.contains(*i)).collect())
    }

    /// Merge two disjoint multi-indices into the sorted union, returning the
    /// sign of the permutation that sorts the concatenation `self ++ other`.
    /// Returns `None` when the indices overlap (the wedge vanishes).
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, i8)> {
        let mut inversions = 0usize;
        for &a in &self.0 {
            for &b in &other.0 {
                if a == b {
                    return None;
                }
                if a > b {
                    inversions += 1;
                }
            }
        }
        let mut merged: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        merged.sort_unstable();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(merged), sign))
    }

    /// All length-`p` multi-indices in `1..=n`, lexicographic order.
    pub fn enumerate(n: usize, p: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if p > n {
            return out;
        }
        let mut cur: Vec<usize> = (1..=p).collect();
        loop {
            out.push(MultiIndex(cur.clone()));
            // advance to the next combination
            let mut t = p;
            while t > 0 && cur[t - 1] == n - (p - t) {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            cur[t - 1] += 1;
            for u in t..p {
                cur[u] = cur[u - 1] + 1;
            }
        }
        out
    }

    /// Position of `self` in `enumerate(n, self.len())`.
    pub fn rank(&self, n: usize) -> usize {
        let p = self.len();
        let mut rank = 0usize;
        let mut prev = 0usize;
        for (t, &i) in self.0.iter().enumerate() {
            for v in prev + 1..i {
                rank += binomial(n - v, p - t - 1);
            }
            prev = i;
        }
        rank
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1usize;
    for t in 0..k {
        num = num * (n - t) / (t + 1);
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted() {
        assert!(MultiIndex::new(vec![2, 1]).is_err());
        assert!(MultiIndex::new(vec![1, 1]).is_err());
        assert!(MultiIndex::new(vec![0]).is_err());
    }

    #[test]
    fn merge_signs() {
        let a = MultiIndex::new(vec![2]).unwrap();
        let b = MultiIndex::new(vec![1]).unwrap();
        let (m, s) = a.merge(&b).unwrap();
        assert_eq!(m.as_slice(), &[1, 2]);
        assert_eq!(s, -1);
        assert!(a.merge(&a).is_none());
        let c = MultiIndex::new(vec![1, 3]).unwrap();
        let d = MultiIndex::new(vec![2, 4]).unwrap();
        // inversions: (3,2) only
        let (m, s) = c.merge(&d).unwrap();
        assert_eq!(m.as_slice(), &[1, 2, 3, 4]);
        assert_eq!(s, -1);
    }

    #[test]
    fn enumeration_is_lex_and_ranked() {
        let all = MultiIndex::enumerate(5, 3);
        assert_eq!(all.len(), binomial(5, 3));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (k, idx) in all.iter().enumerate() {
            assert_eq!(idx.rank(5), k);
        }
    }

    #[test]
    fn complement_merge_covers_full() {
        for idx in MultiIndex::enumerate(6, 2) {
            let co = idx.complement(6);
            let (m, s) = idx.merge(&co).unwrap();
            assert_eq!(m, MultiIndex::full(6));
            assert!(s == 1 || s == -1);
        }
    }
}
