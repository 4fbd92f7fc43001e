//! The Ψ-reduction, goodness, and the verdict table.
//!
//! One Ψ step sends a tuple of size n to size n₁ = Σr − n: in every form the
//! eigenvalue with the most blocks loses one unit in each of its n − n₁
//! smallest blocks. Ties go to the lexicographically smallest label.

use serde::{Deserialize, Serialize};

use crate::error::{DspError, Result};
use crate::jnf::{d_of, r_of, JnfTuple, JordanForm, Partition};
use crate::spectra::{SpectraSummary, Version};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub n: usize,
    pub sum_d: usize,
    pub sum_r: usize,
    pub alpha_holds: bool,
    pub alpha_equality: bool,
    pub beta_holds: bool,
    pub omega_holds: bool,
    pub kappa: i64,
    pub rigidity_index: i64,
}

pub fn condition_report(t: &JnfTuple) -> ConditionReport {
    let n = t.n();
    let rs: Vec<usize> = t.forms().iter().map(r_of).collect();
    let sum_r: usize = rs.iter().sum();
    let sum_d: usize = t.forms().iter().map(d_of).sum();
    let bound = 2 * (n * n) as i64 - 2;
    let kappa = sum_d as i64 - bound;
    ConditionReport {
        n,
        sum_d,
        sum_r,
        alpha_holds: kappa >= 0,
        alpha_equality: kappa == 0,
        beta_holds: rs.iter().all(|r| sum_r - r >= n),
        omega_holds: sum_r >= 2 * n,
        kappa,
        rigidity_index: 2 - kappa,
    }
}

/// Labels with the largest block count, per form, in increasing order.
pub fn admissible_choices(t: &JnfTuple) -> Vec<Vec<String>> {
    t.forms()
        .iter()
        .map(|f| {
            let max = f.blocks().values().map(Partition::len).max().unwrap_or(0);
            f.blocks()
                .iter()
                .filter(|(_, p)| p.len() == max)
                .map(|(l, _)| l.clone())
                .collect()
        })
        .collect()
}

/// One Ψ step with the default tie-break.
pub fn psi_step(t: &JnfTuple) -> Result<(JnfTuple, usize)> {
    let choices: Vec<String> = admissible_choices(t).into_iter().map(|c| c[0].clone()).collect();
    psi_step_with(t, &choices)
}

/// One Ψ step using the given eigenvalue label in each form.
pub fn psi_step_with(t: &JnfTuple, choices: &[String]) -> Result<(JnfTuple, usize)> {
    let rep = condition_report(t);
    let n = t.n();
    if n <= 1 {
        return Err(DspError::NotReducible("size 1".into()));
    }
    if rep.omega_holds {
        return Err(DspError::NotReducible("(ω) holds".into()));
    }
    if !rep.beta_holds {
        return Err(DspError::NotReducible("(β) fails".into()));
    }
    if choices.len() != t.len() {
        return Err(DspError::Dimension("one label per form expected".into()));
    }
    let n1 = rep.sum_r - n;
    let cut = n - n1;
    let mut forms = Vec::with_capacity(t.len());
    for (f, label) in t.forms().iter().zip(choices) {
        let p = f.get(label).ok_or_else(|| DspError::NotReducible(format!("no label {label:?}")))?;
        let max = f.blocks().values().map(Partition::len).max().unwrap_or(0);
        if p.len() != max {
            return Err(DspError::NotReducible(format!("label {label:?} lacks the most blocks")));
        }
        let mut parts = p.parts().to_vec();
        let k = parts.len();
        for b in &mut parts[k - cut..] {
            *b -= 1;
        }
        let mut blocks = f.blocks().clone();
        let q = Partition::new(parts);
        if q.is_empty() {
            blocks.remove(label);
        } else {
            blocks.insert(label.clone(), q);
        }
        forms.push(JordanForm::new(blocks)?);
    }
    Ok((JnfTuple::new(forms)?, n1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    OmegaHolds,
    BetaFails,
    SizeOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub tuple: JnfTuple,
    pub report: ConditionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionChain {
    pub stages: Vec<Stage>,
    pub sizes: Vec<usize>,
    pub stop_reason: StopReason,
}

impl ReductionChain {
    pub fn last(&self) -> &Stage {
        self.stages.last().expect("chains have a stage")
    }

    /// Terminal size n_s.
    pub fn n_s(&self) -> usize {
        *self.sizes.last().expect("chains have a stage")
    }
}

pub fn reduce_chain(t: &JnfTuple) -> ReductionChain {
    let mut stages = Vec::new();
    let mut cur = t.clone();
    loop {
        let report = condition_report(&cur);
        let stop = if cur.n() == 1 {
            Some(StopReason::SizeOne)
        } else if report.omega_holds {
            Some(StopReason::OmegaHolds)
        } else if !report.beta_holds {
            Some(StopReason::BetaFails)
        } else {
            None
        };
        stages.push(Stage { tuple: cur.clone(), report });
        if let Some(stop_reason) = stop {
            let sizes = stages.iter().map(|s| s.tuple.n()).collect();
            return ReductionChain { stages, sizes, stop_reason };
        }
        cur = psi_step(&cur).expect("preconditions checked").0;
    }
}

/// Goodness: (α), (β) at the top and a chain ending in (ω) or at size 1.
/// Tuples of size 1 are good.
pub fn is_good(t: &JnfTuple) -> bool {
    if t.n() == 1 {
        return true;
    }
    let chain = reduce_chain(t);
    let top = &chain.stages[0].report;
    top.alpha_holds
        && top.beta_holds
        && matches!(chain.stop_reason, StopReason::OmegaHolds | StopReason::SizeOne)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    SolvableIrreducible,
    SolvableTrivialCentralizer,
    NotSolvable,
    OpenCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub theorem: Option<String>,
    pub notes: String,
}

const CONJ_1: &str = "open: (alpha) is an equality; conjectured that goodness suffices when q = 1, \
                      and that for q > 1 it suffices in some cases but not in others";
const CONJ_2: &str = "open: d > 1, sum of d_j equals 2n^2 and xi is not primitive; conjectured that \
                      no tuple with trivial centralizer exists";

pub fn verdict(t: &JnfTuple, s: &SpectraSummary) -> Verdict {
    let rep = condition_report(t);
    let n = t.n();
    let v = |status, theorem: &str, notes: String| Verdict {
        status,
        theorem: Some(theorem.to_string()),
        notes,
    };
    if !is_good(t) {
        return v(Status::NotSolvable, "Thm-necessary", "conditions i)/ii) fail".into());
    }
    if s.generic {
        let tag = if s.version == Version::Multiplicative && s.d > 1 {
            "Thm-generic2"
        } else {
            "Thm-generic1"
        };
        return v(Status::SolvableIrreducible, tag, "good tuple, generic eigenvalues".into());
    }
    if s.d > 1 && s.xi_primitive {
        return v(
            Status::SolvableTrivialCentralizer,
            "Thm-suff",
            "d > 1 and xi primitive".into(),
        );
    }
    let big = (rep.sum_d as i64) >= 2 * (n * n) as i64 + 2;
    if s.d > 1 && big {
        if s.relatively_generic {
            return v(
                Status::SolvableIrreducible,
                "Thm-suff1",
                "d > 1, sum of d_j >= 2n^2 + 2, relatively generic eigenvalues".into(),
            );
        }
        return v(
            Status::SolvableTrivialCentralizer,
            "Thm-suff1",
            "d > 1 and sum of d_j >= 2n^2 + 2".into(),
        );
    }
    let (theorem, notes) = if rep.alpha_equality {
        let q_note = if s.q == 1 { "q = 1" } else { "q > 1" };
        (Some("Conjecture-1".to_string()), format!("{CONJ_1} ({q_note})"))
    } else if s.d > 1 && rep.sum_d == 2 * n * n && !s.xi_primitive {
        (Some("Conjecture-2".to_string()), CONJ_2.to_string())
    } else {
        (None, "not covered by the decision table".to_string())
    };
    Verdict { status: Status::OpenCase, theorem, notes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singles(v: &[&[usize]]) -> JnfTuple {
        JnfTuple::singles(v.iter().map(|p| Partition::new(p.to_vec())).collect()).unwrap()
    }

    #[test]
    fn intro_triple() {
        let t = singles(&[&[2], &[2], &[2]]);
        let r = condition_report(&t);
        assert_eq!((r.sum_d, r.kappa, r.rigidity_index), (6, 0, 2));
        assert!(r.alpha_equality && r.beta_holds && !r.omega_holds);
        let (t1, n1) = psi_step(&t).unwrap();
        assert_eq!(n1, 1);
        assert_eq!(t1, singles(&[&[1], &[1], &[1]]));
        let chain = reduce_chain(&t);
        assert_eq!(chain.sizes, vec![2, 1]);
        assert_eq!(chain.stop_reason, StopReason::SizeOne);
        assert!(is_good(&t));
    }

    #[test]
    fn spec_examples() {
        let b = JnfTuple::diagonals(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let r = condition_report(&b);
        assert_eq!((r.sum_d, r.kappa), (18, 2));
        assert!(r.omega_holds);
        assert!(psi_step(&b).is_err());

        let c = JnfTuple::diagonals(&[vec![1, 1, 1, 1], vec![1, 1, 1, 1], vec![2, 2]]).unwrap();
        let ch = reduce_chain(&c);
        assert_eq!((ch.stages.len(), ch.stop_reason), (1, StopReason::OmegaHolds));

        let bad = JnfTuple::diagonals(&[vec![2, 1], vec![2, 1], vec![2, 1]]).unwrap();
        assert!(!condition_report(&bad).beta_holds);
        assert!(!is_good(&bad));

        let sa = singles(&[&[2, 2], &[2, 2], &[2, 2], &[2, 2]]);
        assert!(is_good(&sa));

        let scal = JnfTuple::diagonals(&[vec![3], vec![3], vec![3]]).unwrap();
        let r = condition_report(&scal);
        assert_eq!(r.sum_d, 0);
        assert!(!r.alpha_holds);

        let diag = JnfTuple::diagonals(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(psi_step(&diag).unwrap().1, 1);
    }
}
