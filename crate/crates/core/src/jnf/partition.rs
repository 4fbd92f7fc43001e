use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

/// Non-increasing list of positive block sizes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn ones(n: usize) -> Partition {
        Partition(vec![1; n])
    }

    /// `k` copies of `size`.
    pub fn rect(k: usize, size: usize) -> Partition {
        Partition::new(vec![size; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts (blocks).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Conjugate partition: k-th part is the number of parts ≥ k.
    pub fn dual(&self) -> Partition {
        let m = self.largest();
        Partition((1..=m).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// Rank of the i-th power of a nilpotent matrix of this type.
    pub fn power_rank(&self, i: usize) -> usize {
        self.0.iter().map(|&b| b.saturating_sub(i)).sum()
    }

    /// Σ_{i,i'} min(bᵢ, bᵢ'), the centralizer dimension of one eigenvalue.
    pub fn centralizer_sum(&self) -> usize {
        self.dual().0.iter().map(|c| c * c).sum()
    }

    /// Distinct part sizes, increasing.
    pub fn distinct_sizes(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.dedup();
        s.reverse();
        s
    }

    /// Number of parts equal to `size`.
    pub fn count_of(&self, size: usize) -> usize {
        self.0.iter().filter(|&&p| p == size).count()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl From<Vec<usize>> for Partition {
    fn from(v: Vec<usize>) -> Partition {
        Partition::new(v)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Partition, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&p| p == 0) {
            return Err(serde::de::Error::custom("block sizes must be positive"));
        }
        Ok(Partition::new(v))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_and_counts() {
        let p = Partition::new(vec![1, 3]);
        assert_eq!(p.parts(), &[3, 1]);
        assert_eq!(p.dual(), Partition::new(vec![2, 1, 1]));
        assert_eq!(p.dual().dual(), p);
        assert_eq!(Partition::new(vec![2, 2]).centralizer_sum(), 8);
        assert_eq!(Partition::new(vec![4]).power_rank(1), 3);
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::new(vec![3, 3, 2]).distinct_sizes(), vec![2, 3]);
    }
}
