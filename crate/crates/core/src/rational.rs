//! Exact rationals and their textual forms.
//!
//! Every number that crosses a file or CLI boundary is written as a reduced
//! fraction string `"p/q"` (or `"p"` when `q = 1`). Decimals are only produced
//! for plotting, through [`to_decimal`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` with `q > 0` and `gcd(p, q) = 1`.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = |why: &str| Error::Parse(format!("bad rational {s:?}: {why}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let q: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if !q.is_positive() {
        return Err(bad("denominator must be positive"));
    }
    if !p.gcd(&q).is_one() && !(p.is_zero() && q.is_one()) {
        return Err(bad("fraction is not reduced"));
    }
    Ok(Rational::new(p, q))
}

/// Comma separated list, as taken by `--t a/b,c/d`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse).collect()
}

pub fn format(q: &Rational) -> String {
    q.to_string()
}

/// Scientific notation with exactly `digits` significant digits, rounded half
/// away from zero.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if q.is_zero() {
        return format!("{}e0", pad_zero(digits));
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }
    let scaled = &a / pow(e - (digits as i64 - 1));
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let mut mant = floor.to_integer();
    if frac >= ratio(1, 2) {
        mant += 1;
    }
    if mant.to_string().len() > digits {
        mant /= 10;
        e += 1;
    }
    let ds = mant.to_string();
    let sign = if neg { "-" } else { "" };
    let (head, tail) = ds.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

fn pad_zero(digits: usize) -> String {
    if digits == 1 {
        "0".into()
    } else {
        format!("0.{}", "0".repeat(digits - 1))
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_even_integer(q: &Rational) -> bool {
    is_integer(q) && q.numer().is_even()
}

/// Serde adapter for a single rational written as a string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rational strings.
pub mod serde_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(super::format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
