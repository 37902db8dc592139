//! Exact integer and rational primitives.
//!
//! Everything downstream works on [`Integer`] (arbitrary precision) and
//! [`ExactRational`] (always reduced). There is no floating point in the
//! library.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;

/// Reduced fraction with a positive denominator.
pub type ExactRational = BigRational;

/// Floor square root: the unique `r` with `r^2 <= n < (r+1)^2`.
pub fn isqrt(n: &Integer) -> Result<Integer> {
    if n.is_negative() {
        return Err(Error::Domain(format!("isqrt of negative value {n}")));
    }
    Ok(n.sqrt())
}

/// `Some(r)` with `r^2 == n` when `n` is a perfect square.
pub fn exact_sqrt(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square(n: &Integer) -> bool {
    exact_sqrt(n).is_some()
}

/// Machine-word variant used by the scan loops.
pub fn isqrt_u128(n: u128) -> u128 {
    n.sqrt()
}

pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn rational(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<ExactRational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::Domain("zero denominator".into()));
    }
    Ok(BigRational::new(num.into(), den))
}

/// Render as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde helpers that write integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| D::Error::custom(format!("`{s}` is not a decimal integer")))
    }

    pub mod option {
        use num_bigint::BigInt;
        use serde::{Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(|x| x.to_string()).serialize(s)
        }
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::{Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .serialize(s)
        }
    }
}

/// Serialize any `Display` value as a string.
pub fn display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub mod rational_str {
    use super::{format_rational, ExactRational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(
        v: &ExactRational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }
}
