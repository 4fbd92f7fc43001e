//! Elimination kernels: fraction-free (Bareiss) rank and determinant,
//! an incremental integer span, and rational reduced row-echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mat::Mat;
use super::rat::{common_denominator, Rat};

/// Rows of `m` scaled to integers (each row by its own denominator lcm).
fn integer_rows(m: &Mat) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let den = Rat::from_integer(common_denominator(row));
            row.iter().map(|x| (x * &den).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free elimination in place; returns (rank, sign, last pivot).
fn bareiss(a: &mut [Vec<BigInt>]) -> (usize, i32, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, sign, prev)
}

/// Rank over ℚ.
pub fn rank(m: &Mat) -> usize {
    let mut a = integer_rows(m);
    bareiss(&mut a).0
}

/// Determinant of a square matrix.
pub fn det(m: &Mat) -> Rat {
    let n = m.n();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let den = common_denominator(row);
            scale *= &den;
            let d = Rat::from_integer(den);
            row.iter().map(|x| (x * &d).to_integer()).collect()
        })
        .collect();
    let (r, sign, last) = bareiss(&mut a);
    if r < n {
        return Rat::zero();
    }
    Rat::new(last * BigInt::from(sign), scale)
}

/// Span of integer vectors kept in fraction-free echelon form.
///
/// Each stored vector is primitive and vanishes at the pivots of all
/// earlier vectors, so sequential reduction decides membership.
#[derive(Clone, Debug, Default)]
pub struct IntSpan {
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IntSpan {
    pub fn new() -> IntSpan {
        IntSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.basis.iter().map(|(_, v)| v)
    }

    /// Reduce `v` against the span; the result is zero iff `v` lies in it.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (p, b) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            let g = &b[*p];
            for (x, y) in v.iter_mut().zip(b) {
                if y.is_zero() {
                    *x *= g;
                } else {
                    *x = &*x * g - &f * y;
                }
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Insert `v`; returns the reduced vector if it enlarged the span.
    pub fn insert(&mut self, v: Vec<BigInt>) -> Option<&Vec<BigInt>> {
        let mut v = self.reduce(v);
        let p = v.iter().position(|x| !x.is_zero())?;
        make_primitive(&mut v);
        self.basis.push((p, v));
        self.basis.last().map(|(_, v)| v)
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Rank of a list of integer rows via incremental insertion.
pub fn int_rows_rank(rows: impl IntoIterator<Item = Vec<BigInt>>) -> usize {
    let mut span = IntSpan::new();
    for r in rows {
        span.insert(r);
    }
    span.dim()
}

/// Reduced row-echelon form in place with leftmost pivots; returns pivot columns.
pub fn rref(a: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve `a · x = b`; free variables are set to zero. `None` if inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &Mat) -> Vec<Vec<Rat>> {
    let cols = m.cols();
    let mut a: Vec<Vec<Rat>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.n();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Mat::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::{ri, rq};

    #[test]
    fn rank_and_det() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(det(&m), ri(0));
        let m = Mat::from_i64(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 4]]);
        assert_eq!(det(&m), ri(25));
        let m = Mat::from_entries(2, 2, &[(0, 0, rq(1, 2)), (1, 1, rq(2, 3))]);
        assert_eq!(det(&m), rq(1, 3));
        assert_eq!(rank(&Mat::zero(3)), 0);
        let swap = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&swap), ri(-1));
    }

    #[test]
    fn solve_prefers_zero_free_variables() {
        let a = vec![vec![ri(1), ri(1), ri(0)], vec![ri(0), ri(0), ri(1)]];
        let x = solve(&a, &[ri(3), ri(2)]).unwrap();
        assert_eq!(x, vec![ri(3), ri(0), ri(2)]);
        let a = vec![vec![ri(1), ri(1)], vec![ri(2), ri(2)]];
        assert!(solve(&a, &[ri(1), ri(3)]).is_none());
    }

    #[test]
    fn kernel_and_inverse() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for i in 0..2 {
                let s: Rat = m.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
        let a = Mat::from_i64(&[&[2, 1], &[5, 3]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(&a * &inv, Mat::identity(2));
        assert!(inverse(&Mat::from_i64(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn int_span_membership() {
        let mut s = IntSpan::new();
        let v = |x: &[i64]| x.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>();
        assert!(s.insert(v(&[2, 4, 0])).is_some());
        assert!(s.insert(v(&[0, 3, 3])).is_some());
        assert!(s.insert(v(&[1, 5, 3])).is_none());
        assert!(s.insert(v(&[0, 0, 1])).is_some());
        assert_eq!(s.dim(), 3);
    }
}
