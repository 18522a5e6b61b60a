//! Exact rationals and the small helpers used everywhere else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-size rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `p/q`; panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or a plain integer literal.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Config(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Inverse of [`parse_rat`]: integers print without a denominator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `Some(k)` when `r` is an integer.
pub fn as_integer(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// `Some(k)` when `r` is an integer fitting in `i64`.
pub fn as_i64(r: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    as_integer(r).and_then(|k| k.to_i64())
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// Least common multiple of denominators, used to clear fractions in a row.
pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Approximate value, for diagnostics only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) mod serde_rat {
    //! Serializes rationals as `"p/q"` strings so exactness survives JSON.
    use super::{parse_rat, rat_to_string, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rat(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(super::int(n.as_i64().unwrap())),
            other => Err(D::Error::custom(format!("expected rational string, got {other}"))),
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&rat_to_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            let raw = Vec::<serde_json::Value>::deserialize(d)?;
            raw.into_iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => parse_rat(&s).map_err(D::Error::custom),
                    serde_json::Value::Number(n) if n.is_i64() => {
                        Ok(super::super::int(n.as_i64().unwrap()))
                    }
                    other => Err(D::Error::custom(format!("expected rational, got {other}"))),
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "1/3", "-22/7"] {
            assert_eq!(rat_to_string(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
