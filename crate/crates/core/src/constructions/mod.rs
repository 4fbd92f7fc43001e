//! Explicit nilpotent tuples and their certified verifier.
//!
//! Only closed-form tuples are built: the sparse examples, merged classes,
//! block-glued nice tuples and the almost-special gluings. Every property
//! claimed about them is re-derived by [`verify_tuple`] from the matrices.

mod examples;
mod glue;
mod plan;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{DspError, Result};
use crate::exactmat::rat::serde_rat;
use crate::exactmat::{
    algebra_closure_dim, centralizer_dim, charpoly, jordan_type_nilpotent, rank, ri, Mat, Poly, Rat,
};
use crate::jnf::{JnfTuple, Partition};

pub use examples::{make_example, make_merged, ExampleId};
pub use glue::{build_almost_special, build_nice, SCALING_ATTEMPTS};
pub use plan::{prepare_construction, ConstructionPlan, MergeStep};

/// Matrices A₁, …, A_{p+1} (optionally A_{p+2}) with the pole weights αⱼ.
///
/// `alphas` has one entry per matrix entering B = Σ αⱼ Aⱼ; a trailing extra
/// matrix is the one at the additional pole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixTuple {
    #[serde(with = "serde_rat::vec")]
    pub alphas: Vec<Rat>,
    pub mats: Vec<Mat>,
    pub zero_sum: bool,
}

/// αⱼ = j for j = 1, …, k.
pub fn default_alphas(k: usize) -> Vec<Rat> {
    (1..=k as i64).map(ri).collect()
}

impl MatrixTuple {
    pub fn new(mats: Vec<Mat>, alphas: Vec<Rat>) -> Result<MatrixTuple> {
        let Some(first) = mats.first() else {
            return Err(DspError::Dimension("empty tuple".into()));
        };
        if !first.is_square() || mats.iter().any(|m| !m.is_square() || m.n() != first.n()) {
            return Err(DspError::Dimension("matrices must be square of a common size".into()));
        }
        if alphas.len() != mats.len() && alphas.len() + 1 != mats.len() {
            return Err(DspError::Dimension(format!(
                "{} weights for {} matrices",
                alphas.len(),
                mats.len()
            )));
        }
        for (i, a) in alphas.iter().enumerate() {
            if a == &ri(0) || alphas[..i].contains(a) {
                return Err(DspError::ConstraintViolation("weights must be distinct and nonzero".into()));
            }
        }
        let zero_sum = Mat::sum(&mats).is_some_and(|s| s.is_zero());
        Ok(MatrixTuple { alphas, mats, zero_sum })
    }

    /// Tuple with the default weights for its first `k` matrices.
    pub fn with_default_alphas(mats: Vec<Mat>, k: usize) -> Result<MatrixTuple> {
        MatrixTuple::new(mats, default_alphas(k))
    }

    pub fn n(&self) -> usize {
        self.mats[0].n()
    }

    /// Whether an extra matrix at the additional pole is present.
    pub fn has_extra(&self) -> bool {
        self.mats.len() > self.alphas.len()
    }

    /// B = Σ αⱼ Aⱼ over the weighted matrices.
    pub fn b_matrix(&self) -> Mat {
        let mut b = Mat::zero(self.n());
        for (a, m) in self.alphas.iter().zip(&self.mats) {
            b = &b + &m.scale(a);
        }
        b
    }

    pub fn with_alphas(&self, alphas: Vec<Rat>) -> Result<MatrixTuple> {
        MatrixTuple::new(self.mats.clone(), alphas)
    }
}

#[derive(Deserialize)]
struct TupleWire {
    #[serde(with = "serde_rat::vec")]
    alphas: Vec<Rat>,
    mats: Vec<Mat>,
    #[serde(default)]
    #[allow(dead_code)]
    zero_sum: Option<bool>,
}

impl<'de> Deserialize<'de> for MatrixTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<MatrixTuple, D::Error> {
        let w = TupleWire::deserialize(d)?;
        MatrixTuple::new(w.mats, w.alphas).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub zero_sum: bool,
    pub nilpotent: Vec<bool>,
    /// Jordan type of each nilpotent matrix.
    pub jordan_types: Vec<Option<Partition>>,
    /// Agreement with the expected single-label forms, when given.
    pub types_match: Option<bool>,
    pub closure_dim: usize,
    pub irreducible: bool,
    pub centralizer_dim: usize,
    pub centralizer_trivial: bool,
    pub b_charpoly: Poly,
    pub b_squarefree: bool,
    pub simple_nonzero_count: usize,
    /// B vanishes on rows m₀.. and columns ..m₀, m₀ the rank of the extra matrix.
    pub apparent_condition: Option<bool>,
}

pub fn verify_tuple(t: &MatrixTuple, expected: Option<&JnfTuple>) -> VerificationReport {
    let n = t.n();
    let jordan_types: Vec<Option<Partition>> =
        t.mats.iter().map(|m| jordan_type_nilpotent(m).ok()).collect();
    let types_match = expected.map(|e| {
        e.n() == n
            && e.len() <= t.mats.len()
            && e.forms()
                .iter()
                .zip(&jordan_types)
                .all(|(f, jt)| f.single_partition().is_some_and(|p| jt.as_ref() == Some(p)))
    });
    let closure_dim = algebra_closure_dim(&t.mats);
    let cdim = centralizer_dim(&t.mats);
    let b = t.b_matrix();
    let chi = charpoly(&b);
    let b_squarefree = chi.squarefree_decomposition().len() <= 1;
    let apparent_condition = t.has_extra().then(|| {
        let m0 = rank(t.mats.last().expect("nonempty"));
        (m0..n).all(|i| (0..m0).all(|j| b.get(i, j) == &ri(0)))
    });
    VerificationReport {
        n,
        zero_sum: t.zero_sum,
        nilpotent: jordan_types.iter().map(Option::is_some).collect(),
        jordan_types,
        types_match,
        closure_dim,
        irreducible: closure_dim == n * n,
        centralizer_dim: cdim,
        centralizer_trivial: cdim == 1,
        simple_nonzero_count: chi.simple_nonzero_root_count(),
        b_charpoly: chi,
        b_squarefree,
        apparent_condition,
    }
}

/// B has n distinct nonzero eigenvalues: χ_B squarefree and χ_B(0) ≠ 0.
pub fn b_distinct_nonzero(t: &MatrixTuple) -> bool {
    let chi = charpoly(&t.b_matrix());
    chi.simple_nonzero_root_count() == t.n()
}
