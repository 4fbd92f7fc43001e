//! Dense rational matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{common_denominator, fmt_rat, parse_rat, ri, Rat};
use crate::error::{DspError, Result};

/// Row-major matrix over ℚ. Most callers use square matrices; rectangular
/// shapes appear only as gluing blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn zero(n: usize) -> Mat {
        Mat::zeros(n, n)
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Rat) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(DspError::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Build from integer rows; panics on ragged input (test and table helper).
    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.iter().flat_map(|x| x.iter().map(|&v| ri(v))).collect() }
    }

    /// Sparse constructor from `(row, col, value)` triples, zero-based.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize, Rat)]) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for (i, j, v) in entries {
            m.set(*i, *j, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Size of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_add(&self, o: &Mat) -> Result<Mat> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &Mat) -> Result<Mat> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, o: &Mat) -> Result<Mat> {
        if self.cols != o.rows {
            return Err(DspError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut acc = Mat::identity(self.n());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of a list of same-shape matrices.
    pub fn sum<'a>(ms: impl IntoIterator<Item = &'a Mat>) -> Option<Mat> {
        let mut it = ms.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| &acc + m))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Mat {
        let mut s = Mat::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                s.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        s
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Entries times the lcm of their denominators, as integers.
    pub fn integer_scaled(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.data);
        self.data.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect()
    }

    /// Conjugation `p⁻¹ · self · p`, given `p` and its inverse.
    pub fn conjugate(&self, p: &Mat, p_inv: &Mat) -> Mat {
        &(p_inv * self) * p
    }

    fn same_shape(&self, o: &Mat) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(DspError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        self.try_add(o).expect("shape mismatch in +")
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        self.try_sub(o).expect("shape mismatch in -")
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        self.try_mul(o).expect("shape mismatch in *")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rat).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatWire {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.is_square() {
            return Err(serde::ser::Error::custom("only square matrices are serialized"));
        }
        let entries = (0..self.rows).map(|i| self.row(i).iter().map(fmt_rat).collect()).collect();
        MatWire { n: self.rows, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Mat, D::Error> {
        let w = MatWire::deserialize(d)?;
        if w.n == 0 {
            return Err(D::Error::custom("matrix size must be positive"));
        }
        if w.entries.len() != w.n || w.entries.iter().any(|r| r.len() != w.n) {
            return Err(D::Error::custom(format!("entries must be {0}x{0}", w.n)));
        }
        let mut data = Vec::with_capacity(w.n * w.n);
        for row in &w.entries {
            for e in row {
                data.push(parse_rat(e).map_err(D::Error::custom)?);
            }
        }
        Ok(Mat { rows: w.n, cols: w.n, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::rq;

    #[test]
    fn arithmetic() {
        let a = Mat::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, Mat::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(&a + &(-&a), Mat::zero(2));
        assert_eq!(a.trace(), ri(5));
        assert_eq!(b.pow(2), Mat::identity(2));
        assert!(a.try_mul(&Mat::zeros(3, 3)).is_err());
    }

    #[test]
    fn blocks() {
        let a = Mat::from_i64(&[&[1]]);
        let b = Mat::from_i64(&[&[2, 3], &[4, 5]]);
        let d = Mat::block_diag(&[a, b.clone()]);
        assert_eq!(d.submatrix(1, 1, 2, 2), b);
        assert!(d.get(0, 1).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let m = Mat::from_entries(2, 2, &[(0, 1, rq(-1, 2)), (1, 0, ri(3))]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[["0","-1/2"],["3","0"]]}"#);
        let back: Mat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Mat>(r#"{"n":2,"entries":[["0"]]}"#).is_err());
    }
}
