//! Relation scanner. For each κ, every form contributes the sub-multisets
//! of κ of its eigenvalues; a dynamic programme over forms records, for each
//! attainable exponent sum, how many selections reach it and one witness.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Item, SpectraInvariants, Spectrum, Version};
use crate::error::{DspError, Result};
use crate::exactmat::rat::{frac, is_integer, ri, serde_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationMode {
    /// Additive: sum equal to 0. Multiplicative: sum in ℤ.
    Generic,
    /// Sum in ℤ in both versions.
    StronglyGeneric,
}

/// κ eigenvalues taken from every form (with multiplicity) and their exponent sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kappa: usize,
    pub counts: Vec<BTreeMap<String, usize>>,
    #[serde(with = "serde_rat")]
    pub value: Rat,
    #[serde(with = "serde_rat::int")]
    pub defect: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub(crate) struct Opt {
    pub counts: Vec<usize>,
    pub value: Rat,
    /// Label totals equal s·m/g for the s fixed by κ.
    pub proportional: bool,
}

/// Count vectors over `items` with total `kappa`, in lexicographic order.
pub(crate) fn form_options(items: &[Item], kappa: usize, target: Option<&BTreeMap<String, usize>>) -> Vec<Opt> {
    fn rec(items: &[Item], k: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail: usize = items[k + 1..].iter().map(|i| i.mult).sum();
        let lo = rem.saturating_sub(tail);
        for c in lo..=items[k].mult.min(rem) {
            cur.push(c);
            rec(items, k + 1, rem - c, cur, out);
            cur.pop();
        }
    }
    let mut vecs = Vec::new();
    rec(items, 0, kappa, &mut Vec::new(), &mut vecs);
    vecs.into_iter()
        .map(|counts| {
            let value = items.iter().zip(&counts).map(|(it, &c)| &it.value * ri(c as i64)).sum();
            let proportional = target.is_some_and(|t| {
                let mut totals: BTreeMap<&str, usize> = BTreeMap::new();
                for (it, &c) in items.iter().zip(&counts) {
                    *totals.entry(it.label.as_str()).or_default() += c;
                }
                t.iter().all(|(l, &want)| totals.get(l.as_str()).copied().unwrap_or(0) == want)
            });
            Opt { counts, value, proportional }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub(crate) struct Entry {
    pub ways: u128,
    pub witness: Vec<usize>,
}

pub(crate) struct KappaTable {
    pub kappa: usize,
    pub options: Vec<Vec<Opt>>,
    pub entries: BTreeMap<(Rat, bool), Entry>,
}

/// Per-label targets s·m/g of the (γ*)-multiple of size κ, if any.
pub(crate) fn gamma_star_targets(s: &Spectrum, g: usize, kappa: usize) -> Option<Vec<BTreeMap<String, usize>>> {
    let n = s.n();
    if g <= 1 || (g * kappa) % n != 0 {
        return None;
    }
    let mult = g * kappa / n;
    if mult == 0 || mult >= g {
        return None;
    }
    Some(
        s.tuple()
            .forms()
            .iter()
            .map(|f| f.multiplicities().into_iter().map(|(l, m)| (l, mult * m / g)).collect())
            .collect(),
    )
}

pub(crate) fn scan_kappa(s: &Spectrum, kappa: usize, gamma_g: Option<usize>) -> KappaTable {
    let items = s.items();
    let targets = gamma_g.and_then(|g| gamma_star_targets(s, g, kappa));
    let options: Vec<Vec<Opt>> = items
        .iter()
        .enumerate()
        .map(|(j, it)| form_options(it, kappa, targets.as_ref().map(|t| &t[j])))
        .collect();
    let mut entries: BTreeMap<(Rat, bool), Entry> = BTreeMap::new();
    entries.insert((Rat::zero(), true), Entry { ways: 1, witness: vec![] });
    for opts in &options {
        let mut next: BTreeMap<(Rat, bool), Entry> = BTreeMap::new();
        for ((v, flag), e) in &entries {
            for (oi, o) in opts.iter().enumerate() {
                let key = (v + &o.value, *flag && o.proportional);
                match next.get_mut(&key) {
                    Some(x) => x.ways += e.ways,
                    None => {
                        let mut w = e.witness.clone();
                        w.push(oi);
                        next.insert(key, Entry { ways: e.ways, witness: w });
                    }
                }
            }
        }
        entries = next;
    }
    KappaTable { kappa, options, entries }
}

fn kappa_range(s: &Spectrum, min_kappa: usize) -> std::ops::Range<usize> {
    min_kappa.max(1)..s.n()
}

fn build_relation(s: &Spectrum, table: &KappaTable, value: &Rat, witness: &[usize]) -> Relation {
    let items = s.items();
    let counts = items
        .iter()
        .zip(witness)
        .zip(&table.options)
        .map(|((its, &oi), opts)| {
            its.iter()
                .zip(&opts[oi].counts)
                .filter(|(_, &c)| c > 0)
                .map(|(it, &c)| (it.key.clone(), c))
                .collect()
        })
        .collect();
    Relation {
        kappa: table.kappa,
        counts,
        value: value.clone(),
        defect: is_integer(value).then(|| value.to_integer()),
    }
}

/// First violated relation: smallest κ, then smallest |value|.
pub fn find_relation(s: &Spectrum, mode: RelationMode, min_kappa: usize) -> Option<Relation> {
    let zero_only = mode == RelationMode::Generic && s.version() == Version::Additive;
    for kappa in kappa_range(s, min_kappa) {
        let table = scan_kappa(s, kappa, None);
        let best = table
            .entries
            .iter()
            .filter(|((v, _), _)| if zero_only { v.is_zero() } else { is_integer(v) })
            .min_by(|((a, _), _), ((b, _), _)| (a.abs(), a).cmp(&(b.abs(), b)));
        if let Some(((v, _), e)) = best {
            return Some(build_relation(s, &table, v, &e.witness));
        }
    }
    None
}

/// gcd(m₀, q) computed from the fractional parts of the exponents.
pub(crate) fn gamma_star_order(s: &Spectrum) -> usize {
    let q = super::multiplicity_gcd(s.tuple());
    let reduced: Rat = s.items().iter().flatten().map(|it| frac(&it.value) * ri(it.mult as i64)).sum();
    let m0 = reduced.to_integer().mod_floor(&BigInt::from(q));
    let m0: usize = m0.try_into().expect("residue below q");
    m0.gcd(&q)
}

/// Least |m| over relations with integer sum m; `None` means infinity.
pub fn distance(s: &Spectrum, exclude_gamma_star: bool, min_kappa: usize) -> Option<BigInt> {
    let g = exclude_gamma_star.then(|| gamma_star_order(s));
    let mut best: Option<BigInt> = None;
    for kappa in kappa_range(s, min_kappa) {
        let table = scan_kappa(s, kappa, g);
        for (v, flag) in table.entries.keys() {
            if !is_integer(v) || (exclude_gamma_star && *flag) {
                continue;
            }
            let m = v.to_integer().abs();
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        }
    }
    best
}

/// Whether every violated relation is a multiple of (γ*).
pub fn is_relatively_generic(s: &Spectrum, inv: &SpectraInvariants, min_kappa: usize) -> Result<bool> {
    let g = inv.m0.gcd(&inv.q);
    if inv.q <= 1 || g <= 1 {
        return Err(DspError::PreconditionViolation(
            "relative genericity needs q > 1 and a non-primitive xi".into(),
        ));
    }
    for kappa in kappa_range(s, min_kappa) {
        let table = scan_kappa(s, kappa, Some(g));
        if table.entries.keys().any(|(v, flag)| is_integer(v) && !*flag)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::rq;
    use crate::jnf::{JnfTuple, Partition};
    use crate::spectra::{spectra_invariants, ExponentAssignment};

    fn mk(version: Version, t: JnfTuple, vals: Vec<Vec<(&str, Rat)>>) -> Spectrum {
        let a = ExponentAssignment {
            version,
            values: vals
                .into_iter()
                .map(|m| m.into_iter().map(|(l, v)| (l.to_string(), v)).collect())
                .collect(),
            offsets: None,
        };
        Spectrum::new(t, a).unwrap()
    }

    fn intro(l: [Rat; 3]) -> Spectrum {
        let t = JnfTuple::singles(vec![Partition::new(vec![2]); 3]).unwrap();
        let [a, b, c] = l;
        mk(Version::Multiplicative, t, vec![vec![("0", a)], vec![("0", b)], vec![("0", c)]])
    }

    fn second_example() -> Spectrum {
        let t = JnfTuple::diagonals(&[vec![2, 2], vec![2, 2], vec![2, 2], vec![2, 2]]).unwrap();
        mk(
            Version::Multiplicative,
            t,
            vec![
                vec![("e1", ri(0)), ("e2", rq(1, 8))],
                vec![("e1", ri(0)), ("e2", rq(1, 8))],
                vec![("e1", ri(0)), ("e2", rq(-1, 16))],
                vec![("e1", rq(1, 4)), ("e2", rq(1, 16))],
            ],
        )
    }

    #[test]
    fn intro_relations() {
        assert!(find_relation(&intro([rq(1, 4), rq(1, 4), ri(0)]), RelationMode::Generic, 1).is_none());
        let r = find_relation(&intro([rq(1, 4), rq(3, 4), ri(0)]), RelationMode::Generic, 1).unwrap();
        assert_eq!(r.kappa, 1);
        assert_eq!(r.defect, Some(BigInt::from(1)));
    }

    #[test]
    fn second_example_relation() {
        let s = second_example();
        let inv = spectra_invariants(&s).unwrap();
        assert_eq!((inv.q, inv.d, inv.m0), (2, 2, 1));
        let r = find_relation(&s, RelationMode::Generic, 1).unwrap();
        assert_eq!(r.kappa, 1);
        assert_eq!(r.value, ri(0));
        let r2 = find_relation(&s, RelationMode::Generic, 2).unwrap();
        assert_eq!(r2.kappa, 2);
        assert!(is_integer(&r2.value));
    }

    #[test]
    fn zero_exponents() {
        let t = JnfTuple::diagonals(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        let s = mk(
            Version::Additive,
            t,
            vec![
                vec![("e1", ri(0)), ("e2", ri(1))],
                vec![("e1", ri(0)), ("e2", ri(-1))],
                vec![("e1", ri(1)), ("e2", ri(-1))],
            ],
        );
        let r = find_relation(&s, RelationMode::Generic, 1).unwrap();
        assert_eq!((r.kappa, r.value.clone()), (1, ri(0)));
        assert_eq!(distance(&s, false, 1), Some(BigInt::from(0)));
    }

    #[test]
    fn relative_genericity_needs_non_primitive_xi() {
        let s = intro([rq(1, 4), rq(1, 4), ri(0)]);
        let inv = spectra_invariants(&s).unwrap();
        assert!(is_relatively_generic(&s, &inv, 1).is_err());
    }
}
