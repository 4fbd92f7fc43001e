//! Rational scalars and their string encoding.
//!
//! `Rat` is `num_rational::BigRational`, which keeps values reduced with a
//! positive denominator. The wire form is `"p/q"`, or `"p"` when `q = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::DspError;

pub type Rat = BigRational;

/// Integer-valued rational.
pub fn ri(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn rq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rat(s: &str) -> Result<Rat, DspError> {
    let t = s.trim();
    let bad = || DspError::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(DspError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(num, den))
        }
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - Rat::from_integer(r.floor().to_integer())
}

/// Least common multiple of the denominators, at least 1.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn abs_int(r: &Rat) -> BigInt {
    r.numer().abs()
}

/// Serde adapters for `Rat`-bearing fields.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&fmt_rat(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&fmt_rat(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
            let v = Option::<String>::deserialize(d)?;
            v.map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod int {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            let v = Option::<String>::deserialize(d)?;
            v.map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
