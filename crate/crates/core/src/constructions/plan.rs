//! Combinatorial construction plans: lower ranks to Σr = 2n, then merge
//! classes until three or four remain, avoiding special and almost-special
//! profiles.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{DspError, Result};
use crate::jnf::{classify_profile, omega0, r_of, CaseLabel, JnfTuple, Partition};

/// Cap on the lowered rank vectors tried.
const LOWERING_CAP: usize = 20_000;

/// Merge of the classes at positions `a` < `b` of the current list; the
/// result replaces position `a` and `b` is removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeStep {
    pub a: usize,
    pub b: usize,
    pub r_a: usize,
    pub r_b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub n: usize,
    /// Ranks of the input classes.
    pub ranks: Vec<usize>,
    /// Indices of input classes with r = 0, left out of the plan.
    pub dropped: Vec<usize>,
    /// Ranks after lowering (one per kept class).
    pub lowered: Vec<usize>,
    /// Ω₀ profile of the lowered ranks.
    pub target_profile: Vec<Partition>,
    pub merges: Vec<MergeStep>,
    /// Ω₀ profile after all merges.
    pub final_profile: Vec<Partition>,
    pub label: CaseLabel,
}

fn profile(n: usize, ranks: &[usize]) -> Vec<Partition> {
    ranks.iter().map(|&r| omega0(n, r).expect("ranks below n")).collect()
}

/// Rank vectors r' with 1 ≤ r'ⱼ ≤ rⱼ and Σr' = 2n, fewest changes first,
/// then lexicographically largest.
fn lowerings(ranks: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(ranks: &[usize], k: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= LOWERING_CAP {
            return;
        }
        if k == ranks.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = ranks.len() - k - 1;
        let max_rest: usize = ranks[k + 1..].iter().sum();
        for v in (1..=ranks[k]).rev() {
            if v > rem || rem - v < rest || rem - v > max_rest {
                continue;
            }
            cur.push(v);
            rec(ranks, k + 1, rem - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(ranks, 0, total, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| v.iter().zip(ranks).filter(|(a, b)| a != b).count());
    out
}

fn search_merges(
    n: usize,
    ranks: &mut Vec<usize>,
    steps: &mut Vec<MergeStep>,
    seen: &mut HashSet<Vec<usize>>,
) -> Option<CaseLabel> {
    let len = ranks.len();
    if len == 3 || len == 4 {
        let label = classify_profile(&profile(n, ranks));
        if !label.is_exceptional() {
            return Some(label);
        }
        if len == 3 {
            return None;
        }
    }
    if len <= 3 {
        return None;
    }
    let mut key = ranks.clone();
    key.sort_unstable();
    if !seen.insert(key) {
        return None;
    }
    for a in 0..len {
        for b in a + 1..len {
            let (r_a, r_b) = (ranks[a], ranks[b]);
            if r_a + r_b > n - 1 {
                continue;
            }
            let saved = ranks.clone();
            ranks[a] = r_a + r_b;
            ranks.remove(b);
            steps.push(MergeStep { a, b, r_a, r_b });
            if let Some(l) = search_merges(n, ranks, steps, seen) {
                return Some(l);
            }
            steps.pop();
            *ranks = saved;
        }
    }
    None
}

/// Plan the lowering and merging schedule for a tuple of single-label forms.
pub fn prepare_construction(t: &JnfTuple) -> Result<ConstructionPlan> {
    let n = t.n();
    if t.forms().iter().any(|f| !f.is_single()) {
        return Err(DspError::PreconditionViolation("forms must carry a single label".into()));
    }
    let ranks: Vec<usize> = t.forms().iter().map(r_of).collect();
    let sum: usize = ranks.iter().sum();
    if sum < 2 * n {
        return Err(DspError::PreconditionViolation(format!("Σr = {sum} < 2n = {}", 2 * n)));
    }
    let dropped: Vec<usize> = (0..ranks.len()).filter(|&j| ranks[j] == 0).collect();
    let kept: Vec<usize> = ranks.iter().copied().filter(|&r| r > 0).collect();
    let mut forced = None;
    for lowered in lowerings(&kept, 2 * n) {
        let mut cur = lowered.clone();
        let mut steps = Vec::new();
        let mut seen = HashSet::new();
        if let Some(label) = search_merges(n, &mut cur, &mut steps, &mut seen) {
            return Ok(ConstructionPlan {
                n,
                ranks,
                dropped,
                target_profile: profile(n, &lowered),
                lowered,
                merges: steps,
                final_profile: profile(n, &cur),
                label,
            });
        }
        if forced.is_none() && (lowered.len() == 3 || lowered.len() == 4) {
            forced = Some(classify_profile(&profile(n, &lowered)));
        }
    }
    Err(DspError::Unavoidable(forced.map_or_else(|| "no schedule".to_string(), |l| l.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jnf::classify_family;

    fn t(v: &[&[usize]]) -> JnfTuple {
        JnfTuple::singles(v.iter().map(|p| Partition::new(p.to_vec())).collect()).unwrap()
    }

    #[test]
    fn identity_plan() {
        let f = t(&[&[3, 2, 2, 2, 2, 2, 2], &[3, 3, 3, 3, 3], &[5, 5, 5]]);
        let plan = prepare_construction(&f).unwrap();
        assert!(plan.merges.is_empty());
        assert_eq!(plan.lowered, plan.ranks);
        assert_eq!(plan.label, CaseLabel::Case('F'));
    }

    #[test]
    fn forced_special() {
        let a = t(&[&[2, 2], &[2, 2], &[2, 2], &[2, 2]]);
        assert!(matches!(prepare_construction(&a), Err(DspError::Unavoidable(_))));
    }

    #[test]
    fn five_classes() {
        let x = t(&[&[2, 2, 2], &[2, 2, 2], &[2, 2, 2], &[2, 2, 2], &[2, 2, 2]]);
        let plan = prepare_construction(&x).unwrap();
        assert_eq!(plan.lowered.iter().sum::<usize>(), 12);
        let fin = JnfTuple::singles(plan.final_profile.clone()).unwrap();
        assert_eq!(classify_family(&fin).unwrap(), plan.label);
        assert!(!plan.label.is_exceptional());
    }
}
