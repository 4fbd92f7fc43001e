//! Integer lift of eigenvalue residues with large distance.
//!
//! The residues are lifted canonically, the total is cleared by splitting
//! slots of the last form and shifting the first form, and then pairs of
//! eigenvalues of one form are shifted by u·(m″, −m′) until every relation
//! with integer sum lies at distance at least h.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::relations::{distance, form_options, gamma_star_order, gamma_star_targets};
use super::{spectra_invariants, ExponentAssignment, Spectrum, Version};
use crate::error::{DspError, Result};
use crate::exactmat::rat::{frac, is_integer, ri, Rat};
use crate::jnf::JnfTuple;

pub const DEFAULT_U_MAX: u64 = 64;

/// Cap on the number of integer relations tracked by the sweep.
const RELATION_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenericizeMode {
    /// Simple PMV or primitive ξ: every relation is pushed away.
    A,
    /// Non-primitive ξ: (γ*) and its multiples are exempt.
    B,
}

struct Rel {
    /// Label totals per form.
    totals: Vec<BTreeMap<String, usize>>,
    value: BigInt,
}

fn integer_relations(s: &Spectrum, g: usize) -> Result<Vec<Rel>> {
    let items = s.items();
    let n = s.n();
    let mut out = Vec::new();
    for kappa in 1..n {
        let targets = (g > 1).then(|| gamma_star_targets(s, g, kappa)).flatten();
        let options: Vec<_> = items
            .iter()
            .enumerate()
            .map(|(j, it)| form_options(it, kappa, targets.as_ref().map(|t| &t[j])))
            .collect();
        let (head, last) = options.split_at(options.len() - 1);
        let mut by_frac: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
        for (i, o) in last[0].iter().enumerate() {
            by_frac.entry(frac(&o.value)).or_default().push(i);
        }
        let mut stack: Vec<usize> = Vec::new();
        fn walk(
            head: &[Vec<super::relations::Opt>],
            last: &[super::relations::Opt],
            by_frac: &BTreeMap<Rat, Vec<usize>>,
            items: &[Vec<super::Item>],
            stack: &mut Vec<usize>,
            acc: Rat,
            flag: bool,
            out: &mut Vec<Rel>,
        ) -> Result<()> {
            let depth = stack.len();
            if depth == head.len() {
                let need = frac(&-acc.clone());
                for &li in by_frac.get(&need).into_iter().flatten() {
                    let o = &last[li];
                    if flag && o.proportional {
                        continue;
                    }
                    let value = &acc + &o.value;
                    debug_assert!(is_integer(&value));
                    let mut totals = Vec::with_capacity(items.len());
                    for (j, its) in items.iter().enumerate() {
                        let counts = if j < head.len() { &head[j][stack[j]].counts } else { &o.counts };
                        let mut m: BTreeMap<String, usize> = BTreeMap::new();
                        for (it, &c) in its.iter().zip(counts) {
                            *m.entry(it.label.clone()).or_default() += c;
                        }
                        totals.push(m);
                    }
                    out.push(Rel { totals, value: value.to_integer() });
                    if out.len() > RELATION_CAP {
                        return Err(DspError::PreconditionViolation(
                            "too many integer relations for the lift search".into(),
                        ));
                    }
                }
                return Ok(());
            }
            for (i, o) in head[depth].iter().enumerate() {
                stack.push(i);
                walk(head, last, by_frac, items, stack, &acc + &o.value, flag && o.proportional, out)?;
                stack.pop();
            }
            Ok(())
        }
        walk(head, &last[0], &by_frac, &items, &mut stack, Rat::from_integer(0.into()), true, &mut out)?;
    }
    Ok(out)
}

/// Lift multiplicative residues to additive exponents at distance ≥ h.
pub fn genericize(
    residues: &ExponentAssignment,
    t: &JnfTuple,
    h: u64,
    mode: GenericizeMode,
    u_max: u64,
) -> Result<ExponentAssignment> {
    if residues.version != Version::Multiplicative {
        return Err(DspError::PreconditionViolation("residues must be multiplicative".into()));
    }
    let base = Spectrum::new(t.clone(), residues.clone())?;
    let inv = spectra_invariants(&base)?;
    if mode == GenericizeMode::A && !(inv.q == 1 || inv.xi_primitive) {
        return Err(DspError::PreconditionViolation(
            "mode A needs a simple PMV or a primitive xi".into(),
        ));
    }
    let n = t.n();
    let last = t.len() - 1;

    let mut values: Vec<BTreeMap<String, Rat>> = residues
        .values
        .iter()
        .map(|m| m.iter().map(|(l, v)| (l.clone(), frac(v))).collect())
        .collect();
    let total: Rat = t
        .forms()
        .iter()
        .zip(&values)
        .flat_map(|(f, vals)| f.multiplicities().into_iter().map(move |(l, m)| &vals[&l] * ri(m as i64)))
        .sum();
    let total = total.to_integer();
    let rem = total.mod_floor(&BigInt::from(n)).to_usize().expect("below n");

    let mut offsets: Option<BTreeMap<String, Vec<i64>>> = None;
    if rem > 0 {
        let mut left = rem;
        let mut off = BTreeMap::new();
        for (l, m) in t.forms()[last].multiplicities() {
            let k = left.min(m);
            let mut v = vec![0i64; m];
            v[..k].iter_mut().for_each(|x| *x = -1);
            if k > 0 {
                off.insert(l, v);
            }
            left -= k;
        }
        offsets = Some(off);
    }
    let shift0 = -(total - BigInt::from(rem)) / BigInt::from(n);
    for v in values[0].values_mut() {
        *v += Rat::from_integer(shift0.clone());
    }

    let assignment = |values: &Vec<BTreeMap<String, Rat>>| ExponentAssignment {
        version: Version::Additive,
        values: values.clone(),
        offsets: offsets.clone(),
    };
    let start = Spectrum::new(t.clone(), assignment(&values))?;
    let g = gamma_star_order(&start);
    let mut rels = integer_relations(&start, if mode == GenericizeMode::B { g } else { 1 })?;
    let mults: Vec<BTreeMap<String, usize>> = t.forms().iter().map(|f| f.multiplicities()).collect();
    let hb = BigInt::from(h);

    let pairs: Vec<(usize, String, String)> = mults
        .iter()
        .enumerate()
        .flat_map(|(j, m)| {
            let labels: Vec<String> = m.keys().cloned().collect();
            let mut v = Vec::new();
            for a in 0..labels.len() {
                for b in a + 1..labels.len() {
                    v.push((j, labels[a].clone(), labels[b].clone()));
                }
            }
            v
        })
        .collect();
    let effect = |r: &Rel, (j, a, b): &(usize, String, String)| -> i64 {
        let ca = r.totals[*j].get(a).copied().unwrap_or(0) as i64;
        let cb = r.totals[*j].get(b).copied().unwrap_or(0) as i64;
        ca * mults[*j][b] as i64 - cb * mults[*j][a] as i64
    };
    let us: Vec<i64> = (1..=u_max as i64).flat_map(|u| [u, -u]).collect();

    loop {
        let Some(bad) = rels.iter().position(|r| r.value.abs() < hb) else {
            break;
        };
        if pairs.is_empty() {
            return Err(DspError::PreconditionViolation(
                "a relation needs clearing but no form has two different eigenvalues".into(),
            ));
        }
        let mut applied = false;
        for pair in pairs.iter().filter(|p| effect(&rels[bad], p) != 0) {
            let effects: Vec<i64> = rels.iter().map(|r| effect(r, pair)).collect();
            let found = us.iter().copied().find(|&u| {
                rels.iter()
                    .zip(&effects)
                    .all(|(r, &e)| e == 0 || (&r.value + BigInt::from(u * e)).abs() >= hb)
            });
            if let Some(u) = found {
                let (j, a, b) = pair;
                values[*j].entry(a.clone()).and_modify(|x| *x += ri(u * mults[*j][b] as i64));
                values[*j].entry(b.clone()).and_modify(|x| *x -= ri(u * mults[*j][a] as i64));
                for (r, &e) in rels.iter_mut().zip(&effects) {
                    r.value += BigInt::from(u * e);
                }
                applied = true;
                break;
            }
        }
        if !applied {
            return Err(DspError::SearchExhausted {
                bound: u_max,
                detail: format!("no pair shift clears a relation with sum {}", rels[bad].value),
            });
        }
    }

    let out = assignment(&values);
    let lifted = Spectrum::new(t.clone(), out.clone())?;
    let exclude = mode == GenericizeMode::B && g > 1;
    if let Some(dist) = distance(&lifted, exclude, 1) {
        if dist < hb {
            return Err(DspError::SearchExhausted {
                bound: u_max,
                detail: format!("distance oracle reports {dist} < {h}"),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::rq;
    use crate::jnf::Partition;

    fn mult(vals: Vec<Vec<(&str, Rat)>>) -> ExponentAssignment {
        ExponentAssignment {
            version: Version::Multiplicative,
            values: vals
                .into_iter()
                .map(|m| m.into_iter().map(|(l, v)| (l.to_string(), v)).collect())
                .collect(),
            offsets: None,
        }
    }

    #[test]
    fn intro_residues() {
        let t = JnfTuple::singles(vec![Partition::new(vec![2]); 3]).unwrap();
        let r = mult(vec![vec![("0", rq(1, 4))], vec![("0", rq(1, 4))], vec![("0", ri(0))]]);
        let out = genericize(&r, &t, 5, GenericizeMode::A, DEFAULT_U_MAX).unwrap();
        let s = Spectrum::new(t.clone(), out).unwrap();
        assert_eq!(distance(&s, false, 1), None);
        let r = mult(vec![vec![("0", rq(1, 4))], vec![("0", rq(3, 4))], vec![("0", ri(0))]]);
        assert!(matches!(
            genericize(&r, &t, 5, GenericizeMode::A, DEFAULT_U_MAX),
            Err(DspError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn diagonal_lift() {
        let t = JnfTuple::diagonals(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        let r = mult(vec![
            vec![("e1", ri(0)), ("e2", rq(1, 2))],
            vec![("e1", ri(0)), ("e2", rq(1, 3))],
            vec![("e1", rq(1, 6)), ("e2", ri(0))],
        ]);
        let out = genericize(&r, &t, 5, GenericizeMode::A, DEFAULT_U_MAX).unwrap();
        let s = Spectrum::new(t, out).unwrap();
        assert!(distance(&s, false, 1).is_none_or(|d| d >= BigInt::from(5)));
    }

    #[test]
    fn mode_a_rejects_non_primitive() {
        let t = JnfTuple::diagonals(&[vec![2, 2], vec![2, 2], vec![2, 2]]).unwrap();
        let r = mult(vec![
            vec![("e1", ri(0)), ("e2", rq(1, 2))],
            vec![("e1", ri(0)), ("e2", rq(1, 3))],
            vec![("e1", rq(1, 6)), ("e2", ri(0))],
        ]);
        assert!(genericize(&r, &t, 3, GenericizeMode::A, DEFAULT_U_MAX).is_err());
        let out = genericize(&r, &t, 3, GenericizeMode::B, DEFAULT_U_MAX).unwrap();
        let s = Spectrum::new(t, out).unwrap();
        assert!(distance(&s, true, 1).is_none_or(|d| d >= BigInt::from(3)));
    }
}
