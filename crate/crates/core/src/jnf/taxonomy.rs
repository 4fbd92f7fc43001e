//! Special, almost-special and neighbouring profiles, and the case list
//! (A)–(K) for triples of minimal nilpotent classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::form::JnfTuple;
use super::ops::{is_omega0, op_neighbours, r_of};
use super::partition::Partition;
use crate::error::{DspError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialCase {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlmostCase {
    A1,
    B1,
    C1,
    C2,
    D1,
    D2,
    D3,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 4] = [SpecialCase::A, SpecialCase::B, SpecialCase::C, SpecialCase::D];

    /// Block sizes l_j of the forms.
    pub fn sizes(self) -> &'static [usize] {
        match self {
            SpecialCase::A => &[2, 2, 2, 2],
            SpecialCase::B => &[3, 3, 3],
            SpecialCase::C => &[4, 4, 2],
            SpecialCase::D => &[6, 3, 2],
        }
    }

    /// Matrix size for parameter g.
    pub fn size(self, g: usize) -> usize {
        self.sizes()[0] * g
    }

    /// Profile with n = l₁·g; each form has n/l_j blocks of size l_j.
    pub fn profile(self, g: usize) -> Vec<Partition> {
        let n = self.size(g);
        self.sizes().iter().map(|&l| Partition::rect(n / l, l)).collect()
    }

    fn tag(self) -> &'static str {
        match self {
            SpecialCase::A => "a",
            SpecialCase::B => "b",
            SpecialCase::C => "c",
            SpecialCase::D => "d",
        }
    }
}

impl AlmostCase {
    pub const ALL: [AlmostCase; 7] = [
        AlmostCase::A1,
        AlmostCase::B1,
        AlmostCase::C1,
        AlmostCase::C2,
        AlmostCase::D1,
        AlmostCase::D2,
        AlmostCase::D3,
    ];

    /// The almost-special cases whose one-operation neighbours are listed.
    pub const WITH_NEIGHBOURS: [AlmostCase; 4] =
        [AlmostCase::A1, AlmostCase::B1, AlmostCase::C2, AlmostCase::D3];

    pub fn special(self) -> SpecialCase {
        match self {
            AlmostCase::A1 => SpecialCase::A,
            AlmostCase::B1 => SpecialCase::B,
            AlmostCase::C1 | AlmostCase::C2 => SpecialCase::C,
            AlmostCase::D1 | AlmostCase::D2 | AlmostCase::D3 => SpecialCase::D,
        }
    }

    /// Index of the form that differs from the special profile.
    pub fn changed_index(self) -> usize {
        match self {
            AlmostCase::A1 | AlmostCase::B1 | AlmostCase::C2 | AlmostCase::D3 => 0,
            AlmostCase::D2 => 1,
            AlmostCase::C1 | AlmostCase::D1 => 2,
        }
    }

    /// Profile for parameter g ≥ 2, forms in the order of the special case.
    pub fn profile(self, g: usize) -> Vec<Partition> {
        let mut prof = self.special().profile(g);
        let c = self.changed_index();
        let l = self.special().sizes()[c];
        let k = prof[c].len();
        let mut parts = vec![l; k - 2];
        match self {
            AlmostCase::A1 | AlmostCase::C1 | AlmostCase::D1 => parts.extend([3, 1]),
            AlmostCase::B1 | AlmostCase::D2 => parts.extend([4, 2]),
            AlmostCase::C2 => parts.extend([5, 3]),
            AlmostCase::D3 => parts.extend([7, 5]),
        }
        prof[c] = Partition::new(parts);
        prof
    }

    pub fn tag(self) -> &'static str {
        match self {
            AlmostCase::A1 => "a1",
            AlmostCase::B1 => "b1",
            AlmostCase::C1 => "c1",
            AlmostCase::C2 => "c2",
            AlmostCase::D1 => "d1",
            AlmostCase::D2 => "d2",
            AlmostCase::D3 => "d3",
        }
    }
}

impl FromStr for AlmostCase {
    type Err = DspError;
    fn from_str(s: &str) -> Result<AlmostCase> {
        AlmostCase::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| DspError::Parse(format!("unknown almost-special case {s:?}")))
    }
}

/// Outcome of `classify_family`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    Special(SpecialCase),
    Almost(AlmostCase),
    Neighbouring(AlmostCase),
    /// One of (A)–(K).
    Case(char),
    Other,
}

impl CaseLabel {
    /// Special or almost-special: the profiles to be avoided by construction plans.
    pub fn is_exceptional(self) -> bool {
        matches!(self, CaseLabel::Special(_) | CaseLabel::Almost(_))
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::Special(s) => write!(f, "special-{}", s.tag()),
            CaseLabel::Almost(a) => write!(f, "almost-{}", a.tag()),
            CaseLabel::Neighbouring(a) => write!(f, "neighbouring-of-{}", a.tag()),
            CaseLabel::Case(c) => write!(f, "case-({c})"),
            CaseLabel::Other => write!(f, "other"),
        }
    }
}

impl FromStr for CaseLabel {
    type Err = DspError;
    fn from_str(s: &str) -> Result<CaseLabel> {
        let bad = || DspError::Parse(format!("unknown case label {s:?}"));
        if s == "other" {
            return Ok(CaseLabel::Other);
        }
        if let Some(t) = s.strip_prefix("special-") {
            return SpecialCase::ALL
                .into_iter()
                .find(|c| c.tag() == t)
                .map(CaseLabel::Special)
                .ok_or_else(bad);
        }
        if let Some(t) = s.strip_prefix("almost-") {
            return t.parse().map(CaseLabel::Almost).map_err(|_| bad());
        }
        if let Some(t) = s.strip_prefix("neighbouring-of-") {
            return t.parse().map(CaseLabel::Neighbouring).map_err(|_| bad());
        }
        if let Some(t) = s.strip_prefix("case-(").and_then(|t| t.strip_suffix(')')) {
            let mut cs = t.chars();
            if let (Some(c @ 'A'..='K'), None) = (cs.next(), cs.next()) {
                return Ok(CaseLabel::Case(c));
            }
        }
        Err(bad())
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CaseLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CaseLabel, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Block-size profile of a near-equal partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// All blocks of size k.
    Single(usize),
    /// Blocks of sizes k and k+1, both present.
    Pair(usize),
}

fn shape_of(p: &Partition) -> Option<Shape> {
    if !is_omega0(p) {
        return None;
    }
    let ds = p.distinct_sizes();
    Some(if ds.len() == 1 { Shape::Single(ds[0]) } else { Shape::Pair(ds[0]) })
}

use Shape::{Pair as P, Single as S};

/// Admissible shapes for the roles A₁, A₂, A₃; an empty list admits anything.
const CASES: [(char, [&[Shape]; 3]); 11] = [
    ('A', [&[P(1)], &[], &[]]),
    ('B', [&[S(2), P(2)], &[P(2)], &[]]),
    ('C', [&[P(2)], &[S(3)], &[P(3)]]),
    ('D', [&[P(2)], &[S(3)], &[S(4)]]),
    ('E', [&[P(2)], &[S(3)], &[P(4)]]),
    ('F', [&[P(2)], &[S(3)], &[S(5)]]),
    ('G', [&[P(2)], &[S(3)], &[P(5)]]),
    ('H', [&[S(2), P(2)], &[P(3)], &[S(4)]]),
    ('I', [&[S(2), P(2)], &[P(3)], &[P(4)]]),
    ('J', [&[S(2), P(2)], &[P(3)], &[S(5)]]),
    ('K', [&[S(2), P(2)], &[P(3)], &[P(5)]]),
];

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn sorted(mut v: Vec<Partition>) -> Vec<Partition> {
    v.sort();
    v
}

/// Label a tuple of single-label forms with p ∈ {2, 3} and Σr = 2n.
pub fn classify_family(t: &JnfTuple) -> Result<CaseLabel> {
    let parts: Vec<Partition> = t
        .forms()
        .iter()
        .map(|f| {
            f.single_partition()
                .cloned()
                .ok_or_else(|| DspError::PreconditionViolation("forms must carry a single label".into()))
        })
        .collect::<Result<_>>()?;
    let (n, p) = (t.n(), t.p());
    if p != 2 && p != 3 {
        return Err(DspError::PreconditionViolation(format!("p = {p}, expected 2 or 3")));
    }
    let sum_r: usize = t.forms().iter().map(r_of).sum();
    if sum_r != 2 * n {
        return Err(DspError::PreconditionViolation(format!("Σr = {sum_r} ≠ 2n = {}", 2 * n)));
    }
    Ok(classify_profile(&parts))
}

/// Classification on bare partitions (preconditions already checked).
pub fn classify_profile(parts: &[Partition]) -> CaseLabel {
    let n = parts[0].size();
    let key = sorted(parts.to_vec());
    let param = |s: SpecialCase| {
        let l1 = s.sizes()[0];
        (s.sizes().len() == parts.len() && n % l1 == 0 && n / l1 >= 2).then_some(n / l1)
    };
    for s in SpecialCase::ALL {
        if param(s).is_some_and(|g| sorted(s.profile(g)) == key) {
            return CaseLabel::Special(s);
        }
    }
    for a in AlmostCase::ALL {
        if param(a.special()).is_some_and(|g| sorted(a.profile(g)) == key) {
            return CaseLabel::Almost(a);
        }
    }
    for a in AlmostCase::WITH_NEIGHBOURS {
        let Some(g) = param(a.special()) else { continue };
        let base = a.profile(g);
        for j in 0..base.len() {
            for q in op_neighbours(&base[j]) {
                let mut v = base.clone();
                v[j] = q;
                if sorted(v) == key {
                    return CaseLabel::Neighbouring(a);
                }
            }
        }
    }
    if parts.len() == 3 {
        if let Some(shapes) = parts.iter().map(shape_of).collect::<Option<Vec<_>>>() {
            for (c, roles) in CASES {
                let fits = PERMS3.iter().any(|perm| {
                    (0..3).all(|k| roles[k].is_empty() || roles[k].contains(&shapes[perm[k]]))
                });
                if fits {
                    return CaseLabel::Case(c);
                }
            }
        }
    }
    CaseLabel::Other
}
