//! The sparse example tuples and class merging.
//!
//! First-method matrices live on the superdiagonal and the corner (n, 1);
//! second-method matrices on the superdiagonal and the two entries
//! (n−1, 1), (n, 2). Rows of the second-method tables list the n−1
//! superdiagonal entries followed by those two entries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{default_alphas, MatrixTuple};
use crate::error::{DspError, Result};
use crate::exactmat::{jordan_matrix, ri, Mat};
use crate::jnf::omega0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleId {
    Ex0,
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Ex7,
}

impl ExampleId {
    pub const ALL: [ExampleId; 8] = [
        ExampleId::Ex0,
        ExampleId::Ex1,
        ExampleId::Ex2,
        ExampleId::Ex3,
        ExampleId::Ex4,
        ExampleId::Ex5,
        ExampleId::Ex6,
        ExampleId::Ex7,
    ];

    /// Examples ex3–ex7 use the second placement.
    pub fn second_method(self) -> bool {
        self >= ExampleId::Ex3
    }

    pub fn supports(self, n: usize) -> bool {
        match self {
            ExampleId::Ex0 => n == 2,
            ExampleId::Ex1 => n >= 4,
            ExampleId::Ex2 => n == 3,
            ExampleId::Ex3 => n >= 6 && n % 2 == 0,
            ExampleId::Ex4 => n == 9,
            ExampleId::Ex5 => n == 10,
            ExampleId::Ex6 => n == 12,
            ExampleId::Ex7 => n >= 5 && n % 2 == 1,
        }
    }

    /// Smallest supported size.
    pub fn default_size(self) -> usize {
        match self {
            ExampleId::Ex0 => 2,
            ExampleId::Ex1 => 4,
            ExampleId::Ex2 => 3,
            ExampleId::Ex3 => 6,
            ExampleId::Ex4 => 9,
            ExampleId::Ex5 => 10,
            ExampleId::Ex6 => 12,
            ExampleId::Ex7 => 5,
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ex{}", *self as u8)
    }
}

impl FromStr for ExampleId {
    type Err = DspError;
    fn from_str(s: &str) -> Result<ExampleId> {
        ExampleId::ALL
            .into_iter()
            .find(|e| e.to_string() == s)
            .ok_or_else(|| DspError::Parse(format!("unknown example {s:?}")))
    }
}

fn second_method(n: usize, row: &[i64]) -> Mat {
    debug_assert_eq!(row.len(), n + 1);
    let mut m = Mat::zero(n);
    for k in 0..n - 1 {
        m.set(k, k + 1, ri(row[k]));
    }
    m.set(n - 2, 0, ri(row[n - 1]));
    m.set(n - 1, 1, ri(row[n]));
    m
}

fn repeat(pattern: &[i64], times: usize) -> Vec<i64> {
    pattern.iter().copied().cycle().take(pattern.len() * times).collect()
}

fn second_method_rows(id: ExampleId, n: usize) -> [Vec<i64>; 3] {
    match id {
        ExampleId::Ex3 => {
            let k = (n - 6) / 2;
            let build = |head: [i64; 4], pack: Vec<i64>, tail: [i64; 3]| {
                let mut r = head.to_vec();
                r.extend(pack);
                r.extend(tail);
                r
            };
            [
                build([1, 1, 1, 1], vec![1; n - 6], [1, 1, -1]),
                build([-1, -1, 0, -1], repeat(&[0, -1], k), [-1, 0, 0]),
                build([0, 0, -1, 0], repeat(&[-1, 0], k), [0, -1, 1]),
            ]
        }
        ExampleId::Ex7 => {
            let k = (n - 5) / 2;
            let build = |head: [i64; 4], pack: Vec<i64>, tail: [i64; 2]| {
                let mut r = head.to_vec();
                r.extend(pack);
                r.extend(tail);
                r
            };
            [
                build([1, 1, 1, 1], vec![1; n - 5], [1, -1]),
                build([-1, -1, 0, -1], repeat(&[0, -1], k), [0, 0]),
                build([0, 0, -1, 0], repeat(&[-1, 0], k), [-1, 1]),
            ]
        }
        ExampleId::Ex4 => [
            vec![1, 1, 1, 0, 1, 1, 1, 1, 1, -1],
            vec![-1, -1, 0, -1, -1, 0, -1, -1, 0, 0],
            vec![0, 0, -1, 1, 0, -1, 0, 0, -1, 1],
        ],
        ExampleId::Ex5 => [
            vec![1, 1, 1, 1, 0, 1, 1, 1, 1, 1, -1],
            vec![-1, -1, 0, -1, -1, -1, 0, -1, -1, 0, 0],
            vec![0, 0, -1, 0, 1, 0, -1, 0, 0, -1, 1],
        ],
        ExampleId::Ex6 => [
            vec![1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1, -1],
            vec![-1, -1, 0, -1, -1, 0, -1, -1, 0, -1, -1, 0, 0],
            vec![0, 0, -1, 1, 0, -1, 0, 1, -1, 0, 0, -1, 1],
        ],
        _ => unreachable!("first-method example"),
    }
}

/// The example tuple of the given size, with weights αⱼ = j.
pub fn make_example(id: ExampleId, n: usize) -> Result<MatrixTuple> {
    if !id.supports(n) {
        return Err(DspError::SizeUnsupported { what: id.to_string(), n });
    }
    let mats = match id {
        ExampleId::Ex0 => {
            let e12 = Mat::from_i64(&[&[0, 1], &[0, 0]]);
            let e21 = Mat::from_i64(&[&[0, 0], &[1, 0]]);
            vec![e12.clone(), -&e12, e21.clone(), -&e21]
        }
        ExampleId::Ex1 => {
            let mut a1 = Mat::zero(n);
            let mut a2 = Mat::zero(n);
            for k in 0..n - 1 {
                a1.set(k, k + 1, ri(1));
                if k != 1 {
                    a2.set(k, k + 1, ri(-1));
                }
            }
            a2.set(n - 1, 0, ri(-1));
            let a3 = -&(&a1 + &a2);
            vec![a1, a2, a3]
        }
        ExampleId::Ex2 => vec![
            Mat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
            Mat::from_i64(&[&[0, -1, 0], &[0, 0, 0], &[1, 0, 0]]),
            Mat::from_i64(&[&[0, 0, 0], &[0, 0, -1], &[-1, 0, 0]]),
        ],
        _ => second_method_rows(id, n).iter().map(|r| second_method(n, r)).collect(),
    };
    let k = mats.len();
    MatrixTuple::new(mats, default_alphas(k))
}

/// (A, A′, A″ = A + A′): A of type Ω₀(r₁) in upper Jordan form, A′ with units
/// on the first r₂ zero superdiagonal slots of A.
pub fn make_merged(n: usize, r1: usize, r2: usize) -> Result<(Mat, Mat, Mat)> {
    if r1 < r2 || r1 + r2 >= n {
        return Err(DspError::PreconditionViolation(format!(
            "merging needs r1 >= r2 and r1 + r2 <= n - 1 (n = {n}, r1 = {r1}, r2 = {r2})"
        )));
    }
    let a = jordan_matrix(&omega0(n, r1)?);
    let mut a1 = Mat::zero(n);
    let gaps = (0..n - 1).filter(|&k| a.get(k, k + 1) == &ri(0)).take(r2);
    for k in gaps {
        a1.set(k, k + 1, ri(1));
    }
    let a2 = &a + &a1;
    Ok((a, a1, a2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::{jordan_type_nilpotent, rank};
    use crate::jnf::Partition;

    #[test]
    fn ex0_shape() {
        let t = make_example(ExampleId::Ex0, 2).unwrap();
        assert_eq!(t.mats.len(), 4);
        assert_eq!(t.mats[0], -&t.mats[1]);
        assert_eq!(t.mats[2], -&t.mats[3]);
        assert!(t.zero_sum);
    }

    #[test]
    fn sizes_checked() {
        assert!(matches!(make_example(ExampleId::Ex3, 7), Err(DspError::SizeUnsupported { .. })));
        assert!(make_example(ExampleId::Ex7, 6).is_err());
        assert_eq!("ex5".parse::<ExampleId>().unwrap(), ExampleId::Ex5);
    }

    #[test]
    fn ex3_rows_sum_to_zero() {
        for n in [6, 8, 10] {
            let t = make_example(ExampleId::Ex3, n).unwrap();
            assert!(t.zero_sum);
            assert_eq!(jordan_type_nilpotent(&t.mats[0]).unwrap(), Partition::new(vec![n]));
        }
    }

    #[test]
    fn merged_small() {
        let (a, a1, a2) = make_merged(5, 2, 1).unwrap();
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&a1), 1);
        assert_eq!(jordan_type_nilpotent(&a2).unwrap(), Partition::new(vec![4, 1]));
        let (a, _, a2) = make_merged(5, 2, 0).unwrap();
        assert_eq!(a, a2);
        assert!(make_merged(4, 2, 2).is_err());
    }
}
