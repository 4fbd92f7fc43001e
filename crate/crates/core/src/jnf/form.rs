use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::partition::Partition;
use crate::error::{DspError, Result};

/// Label used for single-eigenvalue (nilpotent-shaped) forms.
pub const NILPOTENT_LABEL: &str = "0";

/// Block sizes per abstract eigenvalue label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JordanForm {
    blocks: BTreeMap<String, Partition>,
    n: usize,
}

impl JordanForm {
    pub fn new(blocks: BTreeMap<String, Partition>) -> Result<JordanForm> {
        if blocks.values().any(Partition::is_empty) {
            return Err(DspError::Parse("empty partition under a label".into()));
        }
        let n = blocks.values().map(Partition::size).sum();
        if n == 0 {
            return Err(DspError::Parse("Jordan form of size 0".into()));
        }
        Ok(JordanForm { blocks, n })
    }

    /// Single label `"0"` carrying `p`.
    pub fn single(p: Partition) -> JordanForm {
        JordanForm::single_labeled(NILPOTENT_LABEL, p)
    }

    pub fn single_labeled(label: &str, p: Partition) -> JordanForm {
        let n = p.size();
        assert!(n > 0, "empty partition");
        JordanForm { blocks: BTreeMap::from([(label.to_string(), p)]), n }
    }

    /// Diagonal form with the given multiplicities, labels `e1, e2, …`.
    pub fn diagonal(mults: &[usize]) -> JordanForm {
        let blocks = mults
            .iter()
            .filter(|&&m| m > 0)
            .enumerate()
            .map(|(i, &m)| (format!("e{}", i + 1), Partition::ones(m)))
            .collect();
        JordanForm::new(blocks).expect("diagonal form of size 0")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &BTreeMap<String, Partition> {
        &self.blocks
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.blocks.keys()
    }

    pub fn get(&self, label: &str) -> Option<&Partition> {
        self.blocks.get(label)
    }

    /// Multiplicity of each eigenvalue label.
    pub fn multiplicities(&self) -> BTreeMap<String, usize> {
        self.blocks.iter().map(|(l, p)| (l.clone(), p.size())).collect()
    }

    /// Multiplicities as a partition (the MV of the form).
    pub fn mv(&self) -> Partition {
        Partition::new(self.blocks.values().map(Partition::size).collect())
    }

    pub fn is_single(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.values().all(|p| p.largest() == 1)
    }

    /// The partition of a single-label form.
    pub fn single_partition(&self) -> Option<&Partition> {
        if self.is_single() {
            self.blocks.values().next()
        } else {
            None
        }
    }

    /// Canonical key ignoring label names: per-label partitions, sorted.
    pub fn shape(&self) -> Vec<Partition> {
        let mut v: Vec<Partition> = self.blocks.values().cloned().collect();
        v.sort();
        v
    }

    /// Replace the partition under `label`; an empty partition removes the label.
    pub(crate) fn with_partition(&self, label: &str, p: Partition) -> JordanForm {
        let mut blocks = self.blocks.clone();
        if p.is_empty() {
            blocks.remove(label);
        } else {
            blocks.insert(label.to_string(), p);
        }
        JordanForm::new(blocks).expect("form emptied")
    }
}

impl fmt::Debug for JordanForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.single_partition() {
            return write!(f, "{p}");
        }
        let parts: Vec<String> = self.blocks.iter().map(|(l, p)| format!("{l}:{p}")).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct FormWire {
    n: usize,
    blocks: BTreeMap<String, Partition>,
}

impl Serialize for JordanForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormWire { n: self.n, blocks: self.blocks.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JordanForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<JordanForm, D::Error> {
        let w = FormWire::deserialize(d)?;
        let f = JordanForm::new(w.blocks).map_err(D::Error::custom)?;
        if f.n != w.n {
            return Err(D::Error::custom(format!("blocks sum to {} but n = {}", f.n, w.n)));
        }
        Ok(f)
    }
}

/// A (p+1)-tuple of Jordan forms of a common size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JnfTuple {
    forms: Vec<JordanForm>,
}

impl JnfTuple {
    pub fn new(forms: Vec<JordanForm>) -> Result<JnfTuple> {
        let Some(first) = forms.first() else {
            return Err(DspError::Parse("empty tuple".into()));
        };
        let n = first.n();
        if forms.iter().any(|f| f.n() != n) {
            return Err(DspError::Dimension("forms of different sizes".into()));
        }
        Ok(JnfTuple { forms })
    }

    /// Tuple of single-label forms.
    pub fn singles(parts: Vec<Partition>) -> Result<JnfTuple> {
        JnfTuple::new(parts.into_iter().map(JordanForm::single).collect())
    }

    /// Tuple of diagonal forms with the given multiplicity vectors.
    pub fn diagonals(mvs: &[Vec<usize>]) -> Result<JnfTuple> {
        JnfTuple::new(mvs.iter().map(|m| JordanForm::diagonal(m)).collect())
    }

    pub fn forms(&self) -> &[JordanForm] {
        &self.forms
    }

    pub fn n(&self) -> usize {
        self.forms[0].n()
    }

    /// Number of forms minus one.
    pub fn p(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Forms sorted by label-free shape.
    pub fn canonical_shapes(&self) -> Vec<Vec<Partition>> {
        let mut v: Vec<Vec<Partition>> = self.forms.iter().map(JordanForm::shape).collect();
        v.sort();
        v
    }
}

impl fmt::Debug for JnfTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.forms).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TupleWire {
    forms: Vec<JordanForm>,
}

impl Serialize for JnfTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TupleWire { forms: self.forms.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JnfTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<JnfTuple, D::Error> {
        let w = TupleWire::deserialize(d)?;
        JnfTuple::new(w.forms).map_err(D::Error::custom)
    }
}
