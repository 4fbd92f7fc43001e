use std::collections::BTreeMap;

use super::form::JordanForm;
use super::partition::Partition;
use crate::error::{DspError, Result};

/// n minus the largest number of blocks carried by one eigenvalue.
pub fn r_of(j: &JordanForm) -> usize {
    let max_blocks = j.blocks().values().map(Partition::len).max().unwrap_or(0);
    j.n() - max_blocks
}

/// Orbit dimension n² − Σ_labels Σ_{i,i'} min(bᵢ, bᵢ').
pub fn d_of(j: &JordanForm) -> usize {
    let n = j.n();
    n * n - j.blocks().values().map(Partition::centralizer_sum).sum::<usize>()
}

/// Diagonal form whose multiplicities are the dual partitions, label by label.
pub fn corresponding_diagonal(j: &JordanForm) -> JordanForm {
    let mut blocks = BTreeMap::new();
    for (label, p) in j.blocks() {
        for (k, m) in p.dual().parts().iter().enumerate() {
            blocks.insert(format!("{label}.{}", k + 1), Partition::ones(*m));
        }
    }
    JordanForm::new(blocks).expect("nonempty form")
}

/// Single-label form whose k-th block sums the k-th largest blocks of all labels.
pub fn corresponding_single(j: &JordanForm) -> JordanForm {
    let len = j.blocks().values().map(Partition::len).max().unwrap_or(0);
    let parts = (0..len)
        .map(|k| j.blocks().values().map(|p| p.parts().get(k).copied().unwrap_or(0)).sum())
        .collect();
    let label = j.labels().next().expect("nonempty form").clone();
    JordanForm::single_labeled(&label, Partition::new(parts))
}

/// Whether `j2` lies in the closure of `j1` (power ranks, label by label).
pub fn dominates(j1: &JordanForm, j2: &JordanForm) -> Result<bool> {
    if j1.multiplicities() != j2.multiplicities() {
        return Err(DspError::ProfileMismatch(format!("{j1:?} vs {j2:?}")));
    }
    for (label, p1) in j1.blocks() {
        let p2 = &j2.blocks()[label];
        let top = p1.largest().max(p2.largest());
        if (1..=top).any(|i| p2.power_rank(i) > p1.power_rank(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partition-level dominance (same size).
pub fn partition_dominates(p1: &Partition, p2: &Partition) -> bool {
    let top = p1.largest().max(p2.largest());
    p1.size() == p2.size() && (1..=top).all(|i| p2.power_rank(i) <= p1.power_rank(i))
}

/// Operation (s,l): two blocks of sizes s ≥ l become s+1 and l−1.
pub fn apply_op_sl(j: &JordanForm, label: &str, s: usize, l: usize) -> Result<JordanForm> {
    let absent = || DspError::BlocksAbsent { label: label.to_string(), s, l };
    let p = j.get(label).ok_or_else(absent)?;
    let q = op_on_partition(p, s, l).ok_or_else(absent)?;
    Ok(j.with_partition(label, q))
}

/// Operation (s,l) on a bare partition; `None` if the blocks are absent.
pub fn op_on_partition(p: &Partition, s: usize, l: usize) -> Option<Partition> {
    if l == 0 || s < l {
        return None;
    }
    let mut parts = p.parts().to_vec();
    let i = parts.iter().position(|&b| b == s)?;
    parts.remove(i);
    let k = parts.iter().position(|&b| b == l)?;
    parts.remove(k);
    parts.push(s + 1);
    parts.push(l - 1);
    Some(Partition::new(parts))
}

/// All partitions reachable from `p` by one operation (s,l).
pub fn op_neighbours(p: &Partition) -> Vec<Partition> {
    let sizes = p.distinct_sizes();
    let mut out = Vec::new();
    for &s in &sizes {
        for &l in sizes.iter().filter(|&&l| l <= s) {
            if let Some(q) = op_on_partition(p, s, l) {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// Nilpotent class of rank r with least orbit dimension: n−r near-equal blocks.
pub fn omega0(n: usize, r: usize) -> Result<Partition> {
    if r >= n {
        return Err(DspError::BadRank { n, r });
    }
    let k = n - r;
    let (q, rem) = (n / k, n % k);
    let parts = (0..k).map(|i| if i < rem { q + 1 } else { q }).collect();
    Ok(Partition::new(parts))
}

/// Whether a partition has the near-equal shape of some Ω₀(r).
pub fn is_omega0(p: &Partition) -> bool {
    p.largest() - p.parts().last().copied().unwrap_or(0) <= 1
}
