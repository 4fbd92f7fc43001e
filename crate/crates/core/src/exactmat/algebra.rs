//! Characteristic polynomials, Jordan types, generated algebras,
//! centralizers and the gluing solver.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::echelon::{nullspace, rank, solve, IntSpan};
use super::mat::Mat;
use super::poly::Poly;
use super::rat::{common_denominator, Rat};
use crate::error::{DspError, Result};
use crate::jnf::Partition;

/// det(xI − m) by Hessenberg reduction and the companion recurrence.
pub fn charpoly(m: &Mat) -> Poly {
    let n = m.n();
    let mut h: Vec<Vec<Rat>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for c in 1..n.saturating_sub(1) {
        let Some(piv) = (c..n).find(|&i| !h[i][c - 1].is_zero()) else {
            continue;
        };
        if piv != c {
            h.swap(piv, c);
            for row in h.iter_mut() {
                row.swap(piv, c);
            }
        }
        let t = h[c][c - 1].clone();
        for i in c + 1..n {
            if h[i][c - 1].is_zero() {
                continue;
            }
            let u = &h[i][c - 1] / &t;
            for j in 0..n {
                let v = &u * &h[c][j];
                h[i][j] -= v;
            }
            for row in h.iter_mut() {
                let v = &u * &row[i];
                row[c] += v;
            }
        }
    }
    let mut p: Vec<Poly> = vec![Poly::one()];
    for k in 1..=n {
        let lin = Poly::new(vec![-h[k - 1][k - 1].clone(), Rat::one()]);
        let mut pk = lin.mul(&p[k - 1]);
        let mut t = Rat::one();
        for i in 1..k {
            t *= &h[k - i][k - i - 1];
            if t.is_zero() {
                break;
            }
            let c = &t * &h[k - i - 1][k - 1];
            pk = pk.sub(&p[k - i - 1].scale(&c));
        }
        p.push(pk);
    }
    p.pop().unwrap_or_else(Poly::one)
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type_nilpotent(m: &Mat) -> Result<Partition> {
    let n = m.n();
    let mut ranks = vec![n];
    let mut pw = Mat::identity(n);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(DspError::NotNilpotent);
        }
        pw = &pw * m;
        let r = rank(&pw);
        if r == *ranks.last().unwrap() {
            return Err(DspError::NotNilpotent);
        }
        ranks.push(r);
    }
    // counts[k-1] = number of blocks of size ≥ k
    let counts: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition::new(counts).dual())
}

pub fn is_nilpotent(m: &Mat) -> bool {
    jordan_type_nilpotent(m).is_ok()
}

fn int_matrix(m: &Mat) -> Vec<BigInt> {
    m.integer_scaled()
}

fn int_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] += x * y;
                }
            }
        }
    }
    out
}

/// Dimension of the unital algebra generated by `ms`.
///
/// Breadth-first right multiplication by the generators starting from the
/// identity; a product is kept only if it enlarges the span. Generators are
/// rescaled to integer matrices, which does not change the algebra.
pub fn algebra_closure_dim(ms: &[Mat]) -> usize {
    let Some(first) = ms.first() else {
        return 0;
    };
    let n = first.n();
    let gens: Vec<Vec<BigInt>> = ms.iter().map(int_matrix).collect();
    let mut span = IntSpan::new();
    let mut queue = VecDeque::new();
    let id: Vec<BigInt> = Mat::identity(n).integer_scaled();
    if let Some(v) = span.insert(id) {
        queue.push_back(v.clone());
    }
    while let Some(x) = queue.pop_front() {
        if span.dim() == n * n {
            break;
        }
        for g in &gens {
            let y = int_mul(&x, g, n);
            if let Some(v) = span.insert(y) {
                queue.push_back(v.clone());
            }
            if span.dim() == n * n {
                break;
            }
        }
    }
    span.dim()
}

/// Dimension of `{X (a×b) : Aⱼ X = X Bⱼ for all j}`.
pub fn intertwiner_dim(a_mats: &[Mat], b_mats: &[Mat]) -> usize {
    let (Some(a0), Some(b0)) = (a_mats.first(), b_mats.first()) else {
        return 0;
    };
    let (a, b) = (a0.n(), b0.n());
    let mut span = IntSpan::new();
    for (am, bm) in a_mats.iter().zip(b_mats) {
        let den = Rat::from_integer(common_denominator(am.entries().iter().chain(bm.entries())));
        let ai: Vec<BigInt> = am.entries().iter().map(|x| (x * &den).to_integer()).collect();
        let bi: Vec<BigInt> = bm.entries().iter().map(|x| (x * &den).to_integer()).collect();
        for i in 0..a {
            for k in 0..b {
                let mut row = vec![BigInt::zero(); a * b];
                for t in 0..a {
                    row[t * b + k] += &ai[i * a + t];
                }
                for t in 0..b {
                    row[i * b + t] -= &bi[t * b + k];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    span.insert(row);
                }
            }
        }
    }
    a * b - span.dim()
}

/// Dimension of the common centralizer of `ms`.
pub fn centralizer_dim(ms: &[Mat]) -> usize {
    intertwiner_dim(ms, ms)
}

/// Solve Σⱼ (Aⱼ Dⱼ − Dⱼ A'ⱼ) = target for the blocks Dⱼ.
///
/// The solution is the one read off the reduced row-echelon form with
/// free unknowns set to zero.
pub fn solve_coboundary_sum(pairs: &[(Mat, Mat)], target: &Mat) -> Result<Vec<Mat>> {
    let (a, b) = (target.rows(), target.cols());
    for (x, y) in pairs {
        if x.n() != a || y.n() != b {
            return Err(DspError::Dimension(format!(
                "pair of sizes {}, {} against a {a}x{b} target",
                x.n(),
                y.n()
            )));
        }
    }
    let blk = a * b;
    let unknowns = blk * pairs.len();
    let mut rows = vec![vec![Rat::zero(); unknowns]; blk];
    for (j, (am, bm)) in pairs.iter().enumerate() {
        let off = j * blk;
        for i in 0..a {
            for k in 0..b {
                let row = &mut rows[i * b + k];
                for t in 0..a {
                    row[off + t * b + k] += am.get(i, t);
                }
                for t in 0..b {
                    row[off + i * b + t] -= bm.get(t, k);
                }
            }
        }
    }
    let x = solve(&rows, target.entries()).ok_or(DspError::NoSolution)?;
    Ok((0..pairs.len())
        .map(|j| {
            let mut d = Mat::zeros(a, b);
            for i in 0..a {
                for k in 0..b {
                    d.set(i, k, x[j * blk + i * b + k].clone());
                }
            }
            d
        })
        .collect())
}

fn mat_vec(m: &Mat, v: &[Rat]) -> Vec<Rat> {
    (0..m.rows())
        .map(|i| m.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

fn int_vec(v: &[Rat]) -> Vec<BigInt> {
    let den = Rat::from_integer(common_denominator(v));
    v.iter().map(|x| (x * &den).to_integer()).collect()
}

/// Change of basis bringing a nilpotent matrix to upper Jordan form.
///
/// Returns `(p, p⁻¹)` with `p⁻¹ m p` block-diagonal, blocks in decreasing
/// order of size and ones on the superdiagonal.
pub fn nilpotent_jordan_basis(m: &Mat) -> Result<(Mat, Mat)> {
    let n = m.n();
    let jt = jordan_type_nilpotent(m)?;
    let top = jt.largest();
    let kernels: Vec<Vec<Vec<Rat>>> = (0..=top).map(|k| nullspace(&m.pow(k as u32))).collect();
    // (size, top vector) in order of discovery
    let mut tops: Vec<(usize, Vec<Rat>)> = Vec::new();
    for k in (1..=top).rev() {
        let mut u = IntSpan::new();
        for v in &kernels[k - 1] {
            u.insert(int_vec(v));
        }
        for (s, t) in &tops {
            let mut w = t.clone();
            for _ in 0..(s - k) {
                w = mat_vec(m, &w);
            }
            u.insert(int_vec(&w));
        }
        for v in &kernels[k] {
            if u.insert(int_vec(v)).is_some() {
                tops.push((k, v.clone()));
            }
        }
    }
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (s, t) in &tops {
        let mut chain = vec![t.clone()];
        for _ in 1..*s {
            let next = mat_vec(m, chain.last().unwrap());
            chain.push(next);
        }
        chain.reverse();
        cols.extend(chain);
    }
    if cols.len() != n {
        return Err(DspError::Dimension("Jordan chains do not span".into()));
    }
    let mut p = Mat::zero(n);
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            p.set(i, j, x.clone());
        }
    }
    let p_inv = super::echelon::inverse(&p).ok_or(DspError::Dimension("singular chain basis".into()))?;
    Ok((p, p_inv))
}

/// Upper Jordan matrix (ones on the superdiagonal) of the given type.
pub fn jordan_matrix(p: &Partition) -> Mat {
    let n = p.size();
    let mut m = Mat::zero(n);
    let mut start = 0;
    for &b in p.parts() {
        for i in start..start + b - 1 {
            m.set(i, i + 1, Rat::one());
        }
        start += b;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::ri;

    fn ex2() -> Vec<Mat> {
        vec![
            Mat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
            Mat::from_i64(&[&[0, -1, 0], &[0, 0, 0], &[1, 0, 0]]),
            Mat::from_i64(&[&[0, 0, 0], &[0, 0, -1], &[-1, 0, 0]]),
        ]
    }

    #[test]
    fn charpoly_small() {
        assert_eq!(charpoly(&Mat::identity(2)).coeffs(), &[ri(1), ri(-2), ri(1)]);
        let m = Mat::from_i64(&[&[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 3], &[5, 0, 0, 0]]);
        assert_eq!(charpoly(&m).coeffs(), &[ri(-30), ri(0), ri(0), ri(0), ri(1)]);
        let m = Mat::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // det(xI - m) = x^3 - 9x^2 + 24x - 18
        assert_eq!(charpoly(&m).coeffs(), &[ri(-18), ri(24), ri(-9), ri(1)]);
    }

    #[test]
    fn jordan_types() {
        assert_eq!(jordan_type_nilpotent(&Mat::zero(4)).unwrap(), Partition::ones(4));
        let j = jordan_matrix(&Partition::new(vec![3, 1, 2]));
        assert_eq!(jordan_type_nilpotent(&j).unwrap(), Partition::new(vec![3, 2, 1]));
        assert_eq!(jordan_type_nilpotent(&Mat::identity(2)), Err(DspError::NotNilpotent));
        for a in ex2() {
            assert_eq!(rank(&a), 2);
            assert_eq!(jordan_type_nilpotent(&a).unwrap(), Partition::new(vec![3]));
        }
    }

    #[test]
    fn closure_and_centralizer() {
        assert_eq!(algebra_closure_dim(&[Mat::identity(2)]), 1);
        assert_eq!(centralizer_dim(&[Mat::identity(2)]), 4);
        assert_eq!(algebra_closure_dim(&ex2()), 9);
        assert_eq!(centralizer_dim(&ex2()), 1);
        let doubled: Vec<Mat> = ex2()
            .iter()
            .map(|a| Mat::block_diag(&[a.clone(), a.scale(&ri(2))]))
            .collect();
        assert_eq!(centralizer_dim(&doubled), 2);
        let scaled: Vec<Mat> = ex2().iter().map(|a| a.scale(&ri(2))).collect();
        assert_eq!(intertwiner_dim(&ex2(), &scaled), 0);
        assert_eq!(intertwiner_dim(&ex2(), &ex2()), 1);
    }

    #[test]
    fn coboundary() {
        let a = ex2();
        let b: Vec<Mat> = a.iter().map(|x| x.scale(&ri(2))).collect();
        let pairs: Vec<(Mat, Mat)> = a.iter().cloned().zip(b.iter().cloned()).collect();
        let target = Mat::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let ds = solve_coboundary_sum(&pairs, &target).unwrap();
        let mut acc = Mat::zero(3);
        for ((x, y), d) in pairs.iter().zip(&ds) {
            acc = &acc + &(&(x * d) - &(d * y));
        }
        assert_eq!(acc, target);

        let s = Mat::scalar(2, ri(3));
        let t = Mat::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(solve_coboundary_sum(&[(s.clone(), s)], &t), Err(DspError::NoSolution));
        let z = solve_coboundary_sum(&pairs, &Mat::zero(3)).unwrap();
        assert!(z.iter().all(Mat::is_zero));
    }

    #[test]
    fn jordan_basis() {
        let a = ex2();
        let (p, pi) = nilpotent_jordan_basis(&a[1]).unwrap();
        assert_eq!(a[1].conjugate(&p, &pi), jordan_matrix(&Partition::new(vec![3])));
        let m = Mat::from_i64(&[&[0, 1, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        let (p, pi) = nilpotent_jordan_basis(&m).unwrap();
        let jt = jordan_type_nilpotent(&m).unwrap();
        assert_eq!(m.conjugate(&p, &pi), jordan_matrix(&jt));
    }
}
