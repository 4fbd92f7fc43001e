//! Block-glued tuples: nice tuples with an extra pole and the
//! almost-special constructions.
//!
//! Both start from block-diagonal copies of small irreducible tuples,
//! rescaled until the copies are pairwise non-equivalent, and fill chosen
//! off-diagonal blocks with sums of coboundaries A^μ D − D A^ν so that the
//! total stays zero.

use num_bigint::BigInt;

use super::examples::{make_example, ExampleId};
use super::{default_alphas, MatrixTuple};
use crate::error::{DspError, Result};
use crate::exactmat::{
    algebra_closure_dim, charpoly, intertwiner_dim, jordan_type_nilpotent, nilpotent_jordan_basis, ri,
    solve_coboundary_sum, Mat, Poly, Rat,
};
use crate::jnf::AlmostCase;

/// Bound on the deterministic block-scaling search.
pub const SCALING_ATTEMPTS: usize = 32;

fn first_equivalent_pair(blocks: &[Vec<Mat>]) -> Option<(usize, usize)> {
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if intertwiner_dim(&blocks[i], &blocks[j]) != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Characteristic polynomial of B over the block diagonal.
fn block_b_charpoly(blocks: &[Vec<Mat>], alphas: &[Rat]) -> Poly {
    blocks.iter().fold(Poly::one(), |acc, blk| {
        let mut b = Mat::zero(blk[0].n());
        for (a, m) in alphas.iter().zip(blk) {
            b = &b + &m.scale(a);
        }
        acc.mul(&charpoly(&b))
    })
}

/// Block k scaled by 1 + k·a, for a = first, first + 1, ….
///
/// Accepts the first attempt whose blocks are pairwise non-equivalent and,
/// when `want_b`, give B distinct nonzero eigenvalues.
fn scaling_search(
    make: impl Fn(usize, &Rat) -> Result<Vec<Mat>>,
    count: usize,
    first: usize,
    alphas: &[Rat],
    want_b: bool,
) -> Result<Vec<Vec<Mat>>> {
    for a in first..first + SCALING_ATTEMPTS {
        let blocks: Vec<Vec<Mat>> =
            (0..count).map(|k| make(k, &ri((1 + k * a) as i64))).collect::<Result<_>>()?;
        if first_equivalent_pair(&blocks).is_some() {
            continue;
        }
        if want_b {
            let chi = block_b_charpoly(&blocks, alphas);
            if chi.simple_nonzero_root_count() != chi.degree().unwrap_or(0) {
                continue;
            }
        }
        return Ok(blocks);
    }
    Err(DspError::SearchExhausted {
        bound: SCALING_ATTEMPTS as u64,
        detail: "no block scaling certified".into(),
    })
}

fn block_diagonal(blocks: &[Vec<Mat>]) -> Vec<Mat> {
    (0..blocks[0].len())
        .map(|j| Mat::block_diag(&blocks.iter().map(|b| b[j].clone()).collect::<Vec<_>>()))
        .collect()
}

/// Glue pairwise non-equivalent irreducible zero-sum blocks of a common size
/// into a tuple with an extra matrix of type (2^{m₀}, 1^{n−2m₀}).
///
/// The extra matrix lives in the first m₀ rows and in the block columns
/// lying entirely to the right of them; its entries there are (c+1)^i, so it
/// has rank m₀ and no zero block.
pub fn build_nice(blocks: &[MatrixTuple], m0: usize, alphas: Option<Vec<Rat>>) -> Result<MatrixTuple> {
    let k = blocks.len();
    if k < 2 {
        return Err(DspError::PreconditionViolation("at least two diagonal blocks".into()));
    }
    let chi = blocks[0].n();
    let len = blocks[0].mats.len();
    if ![2, 3, 4, 6].contains(&chi) {
        return Err(DspError::SizeUnsupported { what: "diagonal block".into(), n: chi });
    }
    for b in blocks {
        if b.n() != chi || b.mats.len() != len {
            return Err(DspError::Dimension("blocks must share size and length".into()));
        }
        if !b.zero_sum || algebra_closure_dim(&b.mats) != chi * chi {
            return Err(DspError::PreconditionViolation("blocks must be irreducible with zero sum".into()));
        }
    }
    let n = k * chi;
    if m0 == 0 || 2 * m0 >= n {
        return Err(DspError::PreconditionViolation(format!("need 1 <= m0 < n/2, got m0 = {m0}, n = {n}")));
    }
    let block_rows = m0.div_ceil(chi);
    let c0 = block_rows * chi;
    if n - c0 < m0 {
        return Err(DspError::PreconditionViolation(format!("m0 = {m0} too large for blocks of size {chi}")));
    }
    let alphas = alphas.unwrap_or_else(|| default_alphas(len));
    if alphas.len() != len {
        return Err(DspError::Dimension(format!("{} weights for {len} matrices", alphas.len())));
    }
    let supplied: Vec<Vec<Mat>> = blocks.iter().map(|b| b.mats.clone()).collect();
    if let Some((i, j)) = first_equivalent_pair(&supplied) {
        return Err(DspError::EquivalentBlocks(i, j));
    }
    let diag = scaling_search(
        |k, s| Ok(supplied[k].iter().map(|m| m.scale(s)).collect()),
        k,
        0,
        &alphas,
        true,
    )?;

    let mut extra = Mat::zero(n);
    for i in 0..m0 {
        for c in c0..n {
            extra.set(i, c, Rat::from_integer(BigInt::from(c - c0 + 1).pow(i as u32)));
        }
    }
    let mut mats = block_diagonal(&diag);
    for mu in 0..block_rows {
        for nu in block_rows..k {
            let target = -&extra.submatrix(mu * chi, nu * chi, chi, chi);
            let pairs: Vec<(Mat, Mat)> = (0..len).map(|j| (diag[mu][j].clone(), diag[nu][j].clone())).collect();
            let ds = solve_coboundary_sum(&pairs, &target)?;
            for (j, d) in ds.iter().enumerate() {
                let h = &(&pairs[j].0 * d) - &(d * &pairs[j].1);
                mats[j].set_block(mu * chi, nu * chi, &h);
            }
        }
    }
    mats.push(extra);
    MatrixTuple::new(mats, alphas)
}

fn almost_base(case: AlmostCase) -> Result<MatrixTuple> {
    match case {
        AlmostCase::A1 => make_example(ExampleId::Ex0, 2),
        AlmostCase::B1 => make_example(ExampleId::Ex2, 3),
        AlmostCase::C1 | AlmostCase::C2 => make_example(ExampleId::Ex1, 4),
        AlmostCase::D1 | AlmostCase::D2 | AlmostCase::D3 => make_example(ExampleId::Ex3, 6),
    }
}

/// The base tuple conjugated so that matrix `c` is in upper Jordan form,
/// then scaled by s and renormalized by diag(s^{-i}) along each Jordan chain
/// so that matrix `c` stays in Jordan form.
fn normalized_copy(base: &[Mat], c: usize, s: &Rat) -> Result<Vec<Mat>> {
    let (p, p_inv) = nilpotent_jordan_basis(&base[c])?;
    let jt = jordan_type_nilpotent(&base[c])?;
    let chi = base[c].n();
    let mut d = Mat::zero(chi);
    let mut d_inv = Mat::zero(chi);
    let mut start = 0;
    for &b in jt.parts() {
        for i in 0..b {
            let e = Rat::from_integer(s.to_integer().pow(i as u32));
            d.set(start + i, start + i, e.recip());
            d_inv.set(start + i, start + i, e);
        }
        start += b;
    }
    let q = &p * &d;
    let q_inv = &d_inv * &p_inv;
    Ok(base.iter().map(|m| m.scale(s).conjugate(&q, &q_inv)).collect())
}

/// The almost-special tuple for parameter g ≥ 2.
///
/// Diagonal blocks are non-equivalent rescaled copies of the matching base
/// example. The matrix whose form changes gets a unit in the lower right
/// corner of each block of the last block column; the others get coboundary
/// blocks against the last diagonal block that restore the zero sum.
pub fn build_almost_special(case: AlmostCase, g: usize, alphas: Option<Vec<Rat>>) -> Result<MatrixTuple> {
    if g < 2 {
        return Err(DspError::PreconditionViolation(format!("g = {g}, almost-special cases need g >= 2")));
    }
    let base = almost_base(case)?;
    let chi = base.n();
    let len = base.mats.len();
    let alphas = alphas.unwrap_or_else(|| default_alphas(len));
    if alphas.len() != len {
        return Err(DspError::Dimension(format!("{} weights for {len} matrices", alphas.len())));
    }
    let c = case.changed_index();
    let first_method = !matches!(case.special(), crate::jnf::SpecialCase::D);
    let diag = scaling_search(|_, s| normalized_copy(&base.mats, c, s), g, 1, &alphas, first_method)?;

    let mut mats = block_diagonal(&diag);
    let last = g - 1;
    let mut corner = Mat::zero(chi);
    corner.set(chi - 1, chi - 1, ri(1));
    for k in 0..last {
        let others: Vec<usize> = (0..len).filter(|&j| j != c).collect();
        let pairs: Vec<(Mat, Mat)> = others.iter().map(|&j| (diag[k][j].clone(), diag[last][j].clone())).collect();
        let ds = solve_coboundary_sum(&pairs, &-&corner)?;
        mats[c].set_block(k * chi, last * chi, &corner);
        for ((&j, d), (a, b)) in others.iter().zip(&ds).zip(&pairs) {
            let h = &(a * d) - &(d * b);
            mats[j].set_block(k * chi, last * chi, &h);
        }
    }
    MatrixTuple::new(mats, alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::verify_tuple;
    use crate::exactmat::centralizer_dim;
    use crate::jnf::{JnfTuple, Partition};

    #[test]
    fn nice_from_two_triples() {
        let a = make_example(ExampleId::Ex2, 3).unwrap();
        let b = MatrixTuple::new(a.mats.iter().map(|m| m.scale(&ri(2))).collect(), a.alphas.clone()).unwrap();
        let t = build_nice(&[a.clone(), b], 1, None).unwrap();
        assert_eq!(t.mats.len(), 4);
        assert!(t.zero_sum);
        assert_eq!(centralizer_dim(&t.mats), 1);
        let extra = jordan_type_nilpotent(&t.mats[3]).unwrap();
        assert_eq!(extra, Partition::new(vec![2, 1, 1, 1, 1]));
        assert!(matches!(build_nice(&[a.clone(), a.clone()], 1, None), Err(DspError::EquivalentBlocks(0, 1))));
        assert!(build_nice(&[a.clone(), a], 0, None).is_err());
    }

    #[test]
    fn almost_b1() {
        let t = build_almost_special(AlmostCase::B1, 2, None).unwrap();
        let expected = JnfTuple::singles(AlmostCase::B1.profile(2)).unwrap();
        let r = verify_tuple(&t, Some(&expected));
        assert!(r.zero_sum && r.centralizer_trivial);
        assert_eq!(r.types_match, Some(true));
        assert!(build_almost_special(AlmostCase::B1, 1, None).is_err());
    }
}
