//! Univariate polynomials over ℚ, coefficients lowest degree first.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{fmt_rat, parse_rat, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / &lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Yun's squarefree decomposition: `self = c · Π fᵢ^i`, returned as
    /// `[f₁, f₂, …]` with monic factors.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let mut c = df.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.divrem(&a).0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Multiplicity of 0 as a root (number of vanishing low coefficients).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Number of distinct complex roots of multiplicity exactly one.
    pub fn simple_root_count(&self) -> usize {
        self.squarefree_decomposition()
            .first()
            .and_then(Poly::degree)
            .unwrap_or(0)
    }

    /// Number of simple roots different from 0.
    pub fn simple_nonzero_root_count(&self) -> usize {
        let simple = self.simple_root_count();
        if self.zero_root_multiplicity() == 1 {
            simple - 1
        } else {
            simple
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let t = if k > 0 && c.is_one() {
                mono
            } else if k > 0 && *c == -Rat::one() {
                format!("-{mono}")
            } else if k > 0 {
                format!("{}*{mono}", fmt_rat(c))
            } else {
                fmt_rat(c)
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c: Result<Vec<Rat>, _> = v.iter().map(|s| parse_rat(s)).collect();
        c.map(Poly::new).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rat::ri;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| ri(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.mul(&b).divrem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree() {
        // x^2 (x-1)^3 (x+1)
        let f = p(&[0, 0, 1]).mul(&p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-1, 1]))).mul(&p(&[1, 1]));
        let sf = f.squarefree_decomposition();
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], p(&[1, 1]));
        assert_eq!(sf[1], p(&[0, 1]));
        assert_eq!(sf[2], p(&[-1, 1]));
        assert_eq!(f.simple_root_count(), 1);
        assert_eq!(f.simple_nonzero_root_count(), 1);
        // x (x^3 + 2): four simple roots, three nonzero
        let g = p(&[0, 2, 0, 0, 1]);
        assert_eq!(g.simple_root_count(), 4);
        assert_eq!(g.simple_nonzero_root_count(), 3);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "x^2 - 2*x + 1");
        assert_eq!(p(&[3, 0, 0, 0, 1]).to_string(), "x^4 + 3");
    }
}
