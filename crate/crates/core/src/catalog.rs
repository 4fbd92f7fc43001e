//! Tuples of diagonal Jordan forms by index of rigidity.
//!
//! Rigid tuples are produced by undoing Ψ: every form of a smaller tuple may
//! gain an eigenvalue of multiplicity 0, one eigenvalue per form is chosen,
//! and the size n = p·n₁ − Σμ′ⱼ is forced by the chosen multiplicities μ′ⱼ.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{DspError, Result};
use crate::jnf::{JnfTuple, Partition};
use crate::reduction::{condition_report, psi_step};

/// Multiplicity vectors of a tuple of diagonal forms, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MvTuple {
    pub mvs: Vec<Partition>,
    pub n: usize,
    pub p: usize,
    /// gcd of all multiplicities.
    pub q: usize,
    pub rigidity_index: i64,
}

impl MvTuple {
    pub fn new(mut mvs: Vec<Partition>) -> Result<MvTuple> {
        let n = mvs.first().map(Partition::size).unwrap_or(0);
        if mvs.len() < 2 || n == 0 || mvs.iter().any(|m| m.size() != n) {
            return Err(DspError::Dimension("multiplicity vectors must share a positive size".into()));
        }
        mvs.sort();
        let q = mvs.iter().flat_map(|m| m.parts()).fold(0usize, |g, &x| num_integer::gcd(g, x));
        let p = mvs.len() - 1;
        let t = JnfTuple::diagonals(&mvs.iter().map(|m| m.parts().to_vec()).collect::<Vec<_>>())?;
        let rigidity_index = condition_report(&t).rigidity_index;
        Ok(MvTuple { mvs, n, p, q, rigidity_index })
    }

    pub fn from_slices(v: &[&[usize]]) -> Result<MvTuple> {
        MvTuple::new(v.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    /// The tuple of diagonal forms with labels e1, e2, … in MV order.
    pub fn to_jnf(&self) -> JnfTuple {
        JnfTuple::diagonals(&self.mvs.iter().map(|m| m.parts().to_vec()).collect::<Vec<_>>())
            .expect("validated on construction")
    }

    /// Canonical MV tuple of a tuple of forms (labels forgotten).
    pub fn from_jnf(t: &JnfTuple) -> Result<MvTuple> {
        MvTuple::new(t.forms().iter().map(|f| f.mv()).collect())
    }
}

/// All tuples reducing to `t` by one Ψ step.
pub fn inverse_psi_extensions(t: &MvTuple) -> Vec<MvTuple> {
    let choices: Vec<Vec<usize>> = t
        .mvs
        .iter()
        .map(|m| {
            let mut c: Vec<usize> = m.distinct_sizes();
            c.insert(0, 0);
            c
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mu: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(ext) = extension(t, &mu) {
            out.insert(ext);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out.into_iter().collect();
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn extension(t: &MvTuple, mu: &[usize]) -> Option<MvTuple> {
    let n1 = t.n;
    let sum: usize = mu.iter().sum();
    let n = (t.p * n1).checked_sub(sum)?;
    if n <= n1 {
        return None;
    }
    let grow = n - n1;
    let mut mvs = Vec::with_capacity(mu.len());
    for (m, &chosen) in t.mvs.iter().zip(mu) {
        let mut parts = m.parts().to_vec();
        let new = chosen + grow;
        if chosen == 0 {
            parts.push(new);
        } else {
            let pos = parts.iter().position(|&x| x == chosen)?;
            parts[pos] = new;
        }
        if parts.iter().any(|&x| x > new) {
            return None;
        }
        mvs.push(Partition::new(parts));
    }
    let ext = MvTuple::new(mvs).ok()?;
    let (back, size) = psi_step(&ext.to_jnf()).ok()?;
    (size == n1 && MvTuple::from_jnf(&back).ok()? == *t).then_some(ext)
}

/// Rigid tuples of diagonal forms with p + 1 forms and size ≤ n_max.
pub fn enumerate_rigid(n_max: usize, p: usize) -> Result<Vec<MvTuple>> {
    if n_max == 0 || p == 0 {
        return Err(DspError::PreconditionViolation("need n_max >= 1 and p >= 1".into()));
    }
    let start = MvTuple::new(vec![Partition::new(vec![1]); p + 1])?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for e in inverse_psi_extensions(&t) {
            if e.n <= n_max && seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
    }
    let mut out: Vec<MvTuple> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.n, &a.mvs).cmp(&(b.n, &b.mvs)));
    Ok(out)
}

/// The base lists: the four tuples of index 0, or for even h ≤ −2 the four
/// series scaled by d with size ≤ n_max.
pub fn base_list(h: i64, n_max: usize) -> Result<Vec<MvTuple>> {
    let family = |d: usize| -> Result<Vec<MvTuple>> {
        Ok(vec![
            MvTuple::from_slices(&[&[d, d], &[d, d], &[d, d], &[d, d]])?,
            MvTuple::from_slices(&[&[d, d, d], &[d, d, d], &[d, d, d]])?,
            MvTuple::from_slices(&[&[d, d, d, d], &[d, d, d, d], &[2 * d, 2 * d]])?,
            MvTuple::from_slices(&[&[d; 6], &[2 * d, 2 * d, 2 * d], &[3 * d, 3 * d]])?,
        ])
    };
    if h == 0 {
        return family(1);
    }
    if h > 0 || h % 2 != 0 {
        return Err(DspError::UnsupportedIndex(h));
    }
    let mut out = Vec::new();
    for d in 1.. {
        let fam: Vec<MvTuple> = family(d)?.into_iter().filter(|t| t.n <= n_max).collect();
        if fam.is_empty() {
            break;
        }
        out.extend(fam);
    }
    out.sort_by(|a, b| (a.n, &a.mvs).cmp(&(b.n, &b.mvs)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensions_of_the_trivial_triple() {
        let t = MvTuple::from_slices(&[&[1], &[1], &[1]]).unwrap();
        let ext = inverse_psi_extensions(&t);
        assert!(ext.contains(&MvTuple::from_slices(&[&[1, 1], &[1, 1], &[1, 1]]).unwrap()));
        let t2 = MvTuple::from_slices(&[&[1, 1], &[1, 1], &[1, 1]]).unwrap();
        let ext2 = inverse_psi_extensions(&t2);
        assert!(ext2.contains(&MvTuple::from_slices(&[&[2, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap()));
    }

    #[test]
    fn small_enumeration() {
        let r1 = enumerate_rigid(1, 2).unwrap();
        assert_eq!(r1.len(), 1);
        let r2 = enumerate_rigid(2, 2).unwrap();
        let pair = MvTuple::from_slices(&[&[1, 1], &[1, 1], &[1, 1]]).unwrap();
        assert_eq!(r2.iter().filter(|t| t.n == 2).collect::<Vec<_>>(), vec![&pair]);
        assert!(r2.iter().all(|t| t.rigidity_index == 2));
    }

    #[test]
    fn base_lists() {
        let l0 = base_list(0, 12).unwrap();
        assert_eq!(l0.len(), 4);
        assert!(l0.iter().all(|t| t.rigidity_index == 0));
        assert!(matches!(base_list(-1, 12), Err(DspError::UnsupportedIndex(-1))));
        assert!(matches!(base_list(2, 12), Err(DspError::UnsupportedIndex(2))));
        let s = base_list(-2, 8).unwrap();
        assert!(s.iter().all(|t| t.n <= 8));
        assert!(s.contains(&MvTuple::from_slices(&[&[2, 2], &[2, 2], &[2, 2], &[2, 2]]).unwrap()));
    }
}
