//! Arbitrary-precision rationals and their text form.
//!
//! `Rational` is `num_rational::BigRational`, which keeps the fraction
//! reduced with a positive denominator after every operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Text form `num/den`, or `num` when the denominator is one.
pub fn to_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(text: &str) -> Result<Rational, ParseError> {
    let bad = || ParseError::Rational(text.to_string());
    let t = text.trim();
    match t.split_once('/') {
        None => t
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Both parts overflow f64: scale by bit lengths first.
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
        let n = (q.numer().abs() >> shift.max(0) as usize)
            .to_f64()
            .unwrap_or(f64::MAX);
        let d = (q.denom() >> shift.max(0) as usize)
            .to_f64()
            .unwrap_or(f64::MAX);
        let v = n / d;
        if q.is_negative() {
            -v
        } else {
            v
        }
    })
}

/// `k!` as a rational.
pub fn factorial(k: u32) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

pub mod serde_text {
    //! `serde(with = ...)` adaptor storing a rational as its text form.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}
