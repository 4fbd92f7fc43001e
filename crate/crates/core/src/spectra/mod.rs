//! Eigenvalues as rational exponents λ (σ = exp 2πiλ) attached to the
//! labels of a Jordan-form tuple, the invariants q, d, ξ = exp(2πi m₀/q),
//! genericity relations and their distance, and the generic lift.
//!
//! Only rational exponents are representable.

mod genericize;
mod relations;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DspError, Result};
use crate::exactmat::rat::{fmt_rat, frac, is_integer, parse_rat, ri, Rat};
use crate::jnf::{JnfTuple, Partition};

pub use genericize::{genericize, GenericizeMode, DEFAULT_U_MAX};
pub use relations::{distance, find_relation, is_relatively_generic, Relation, RelationMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Version {
    Additive,
    Multiplicative,
}

/// Exponents per form and label. The last form may carry per-slot integer
/// offsets: slot k of label l then has exponent λ_l + offsets[l][k].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentAssignment {
    pub version: Version,
    pub values: Vec<BTreeMap<String, Rat>>,
    pub offsets: Option<BTreeMap<String, Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct AssignmentWire {
    version: Version,
    values: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    offsets: Option<BTreeMap<String, Vec<i64>>>,
}

impl Serialize for ExponentAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AssignmentWire {
            version: self.version,
            values: self
                .values
                .iter()
                .map(|m| m.iter().map(|(l, v)| (l.clone(), fmt_rat(v))).collect())
                .collect(),
            offsets: self.offsets.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentAssignment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = AssignmentWire::deserialize(d)?;
        let values = w
            .values
            .iter()
            .map(|m| {
                m.iter()
                    .map(|(l, v)| Ok((l.clone(), parse_rat(v)?)))
                    .collect::<Result<BTreeMap<_, _>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(ExponentAssignment { version: w.version, values, offsets: w.offsets })
    }
}

/// One distinct exponent value occurring in a form, with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Item {
    pub key: String,
    pub label: String,
    pub value: Rat,
    pub mult: usize,
}

/// A Jordan-form tuple together with exponents for its labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    tuple: JnfTuple,
    exponents: ExponentAssignment,
}

#[derive(Deserialize)]
struct SpectrumWire {
    tuple: JnfTuple,
    exponents: ExponentAssignment,
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SpectrumWire::deserialize(d)?;
        Spectrum::new(w.tuple, w.exponents).map_err(D::Error::custom)
    }
}

impl Spectrum {
    pub fn new(tuple: JnfTuple, exponents: ExponentAssignment) -> Result<Spectrum> {
        if exponents.values.len() != tuple.len() {
            return Err(DspError::Parse(format!(
                "{} exponent maps for {} forms",
                exponents.values.len(),
                tuple.len()
            )));
        }
        for (j, (f, vals)) in tuple.forms().iter().zip(&exponents.values).enumerate() {
            if !f.labels().eq(vals.keys()) {
                return Err(DspError::Parse(format!("labels of form {j} do not match its exponents")));
            }
            let keys: Vec<Rat> = match exponents.version {
                Version::Multiplicative => vals.values().map(frac).collect(),
                Version::Additive => vals.values().cloned().collect(),
            };
            for (a, x) in keys.iter().enumerate() {
                if keys[..a].contains(x) {
                    return Err(DspError::ConstraintViolation(format!(
                        "form {j} has two labels with the same eigenvalue"
                    )));
                }
            }
        }
        if let Some(off) = &exponents.offsets {
            let last = tuple.forms().last().expect("nonempty tuple");
            for (l, v) in off {
                let m = last.get(l).map(Partition::size).ok_or_else(|| {
                    DspError::Parse(format!("offset label {l:?} absent from the last form"))
                })?;
                if v.len() != m {
                    return Err(DspError::Parse(format!(
                        "offsets for {l:?} have {} slots, multiplicity is {m}",
                        v.len()
                    )));
                }
            }
        }
        let s = Spectrum { tuple, exponents };
        let total = s.total();
        match s.exponents.version {
            Version::Additive if !total.is_zero() => Err(DspError::ConstraintViolation(format!(
                "trace condition fails: weighted sum is {}",
                fmt_rat(&total)
            ))),
            Version::Multiplicative if !is_integer(&total) => Err(DspError::ConstraintViolation(
                format!("determinant condition fails: weighted sum is {}", fmt_rat(&total)),
            )),
            _ => Ok(s),
        }
    }

    pub fn tuple(&self) -> &JnfTuple {
        &self.tuple
    }

    pub fn exponents(&self) -> &ExponentAssignment {
        &self.exponents
    }

    pub fn version(&self) -> Version {
        self.exponents.version
    }

    pub fn n(&self) -> usize {
        self.tuple.n()
    }

    /// Σⱼ Σ_slots λ, offsets included.
    pub fn total(&self) -> Rat {
        self.items().iter().flatten().map(|it| &it.value * ri(it.mult as i64)).sum()
    }

    /// Distinct exponent values per form.
    pub(crate) fn items(&self) -> Vec<Vec<Item>> {
        let last = self.tuple.len() - 1;
        self.tuple
            .forms()
            .iter()
            .zip(&self.exponents.values)
            .enumerate()
            .map(|(j, (f, vals))| {
                let mut items = Vec::new();
                for (label, p) in f.blocks() {
                    let lam = &vals[label];
                    let offs = (j == last)
                        .then_some(self.exponents.offsets.as_ref())
                        .flatten()
                        .and_then(|o| o.get(label));
                    match offs {
                        None => items.push(Item {
                            key: label.clone(),
                            label: label.clone(),
                            value: lam.clone(),
                            mult: p.size(),
                        }),
                        Some(v) => {
                            let mut groups: BTreeMap<i64, usize> = BTreeMap::new();
                            for o in v {
                                *groups.entry(*o).or_default() += 1;
                            }
                            for (o, c) in groups {
                                let key = if o == 0 { label.clone() } else { format!("{label}{o:+}") };
                                items.push(Item {
                                    key,
                                    label: label.clone(),
                                    value: lam + ri(o),
                                    mult: c,
                                });
                            }
                        }
                    }
                }
                items
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectraInvariants {
    pub q: usize,
    pub d: usize,
    pub m0: usize,
    pub xi_primitive: bool,
}

/// gcd of all multiplicities.
pub fn multiplicity_gcd(t: &JnfTuple) -> usize {
    t.forms()
        .iter()
        .flat_map(|f| f.blocks().values().map(Partition::size))
        .fold(0, |g, m| g.gcd(&m))
}

/// gcd over forms, labels and sizes m of the number of blocks of size m.
pub fn block_count_gcd(t: &JnfTuple) -> usize {
    t.forms()
        .iter()
        .flat_map(|f| f.blocks().values())
        .flat_map(|p| p.distinct_sizes().into_iter().map(move |s| p.count_of(s)))
        .fold(0, |g, c| g.gcd(&c))
}

pub fn spectra_invariants(s: &Spectrum) -> Result<SpectraInvariants> {
    let q = multiplicity_gcd(s.tuple());
    let d = block_count_gcd(s.tuple());
    let total = s.total();
    if !is_integer(&total) {
        return Err(DspError::ConstraintViolation("weighted exponent sum is not an integer".into()));
    }
    let m0 = total
        .to_integer()
        .mod_floor(&BigInt::from(q))
        .to_usize()
        .expect("residue below q");
    Ok(SpectraInvariants { q, d, m0, xi_primitive: m0.gcd(&q) == 1 })
}

/// Inputs of the verdict table derived from labeled data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectraSummary {
    pub version: Version,
    pub generic: bool,
    pub relatively_generic: bool,
    pub d: usize,
    pub q: usize,
    pub xi_primitive: bool,
}

pub fn summarize(s: &Spectrum, min_kappa: usize) -> Result<SpectraSummary> {
    let inv = spectra_invariants(s)?;
    let generic = find_relation(s, RelationMode::Generic, min_kappa).is_none();
    let relatively_generic = s.version() == Version::Multiplicative
        && inv.q > 1
        && inv.m0.gcd(&inv.q) > 1
        && is_relatively_generic(s, &inv, min_kappa)?;
    Ok(SpectraSummary {
        version: s.version(),
        generic,
        relatively_generic,
        d: inv.d,
        q: inv.q,
        xi_primitive: inv.xi_primitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::rq;

    pub(crate) fn assignment(version: Version, vals: &[&[(&str, Rat)]]) -> ExponentAssignment {
        ExponentAssignment {
            version,
            values: vals
                .iter()
                .map(|m| m.iter().map(|(l, v)| (l.to_string(), v.clone())).collect())
                .collect(),
            offsets: None,
        }
    }

    fn intro(l: [Rat; 3]) -> Spectrum {
        let t = JnfTuple::singles(vec![Partition::new(vec![2]); 3]).unwrap();
        let [a, b, c] = l;
        Spectrum::new(t, assignment(Version::Multiplicative, &[&[("0", a)], &[("0", b)], &[("0", c)]]))
            .unwrap()
    }

    #[test]
    fn intro_invariants() {
        let s = intro([rq(1, 4), rq(1, 4), ri(0)]);
        let inv = spectra_invariants(&s).unwrap();
        assert_eq!(inv, SpectraInvariants { q: 2, d: 1, m0: 1, xi_primitive: true });
        let s = intro([rq(1, 4), rq(3, 4), ri(0)]);
        let inv = spectra_invariants(&s).unwrap();
        assert_eq!((inv.m0, inv.xi_primitive), (0, false));
    }

    #[test]
    fn validation() {
        let t = JnfTuple::singles(vec![Partition::new(vec![2]); 3]).unwrap();
        let a = assignment(Version::Multiplicative, &[&[("0", rq(1, 3))], &[("0", ri(0))], &[("0", ri(0))]]);
        assert!(matches!(Spectrum::new(t.clone(), a), Err(DspError::ConstraintViolation(_))));
        let a = assignment(Version::Multiplicative, &[&[("x", ri(0))], &[("0", ri(0))], &[("0", ri(0))]]);
        assert!(Spectrum::new(t, a).is_err());
        let d = JnfTuple::diagonals(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        let a = assignment(
            Version::Multiplicative,
            &[&[("e1", ri(0)), ("e2", ri(1))], &[("e1", ri(0)), ("e2", rq(1, 2))], &[("e1", ri(0)), ("e2", rq(1, 2))]],
        );
        assert!(Spectrum::new(d, a).is_err());
    }

    #[test]
    fn scalar_forms() {
        let t = JnfTuple::diagonals(&[vec![3], vec![3], vec![3]]).unwrap();
        let a = assignment(Version::Multiplicative, &[&[("e1", ri(0))], &[("e1", ri(0))], &[("e1", ri(0))]]);
        let inv = spectra_invariants(&Spectrum::new(t, a).unwrap()).unwrap();
        assert_eq!(inv, SpectraInvariants { q: 3, d: 3, m0: 0, xi_primitive: false });
    }
}
