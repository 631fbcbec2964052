//! Exact rational helpers. Every threshold comparison in the crate goes
//! through these so no branch decision depends on floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = BigRational;

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow3_inv(k: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(3), k))
}

/// `count >= r`, exactly.
pub fn at_least(count: usize, r: &Rational) -> bool {
    int(count) >= *r
}

/// Largest integer not exceeding `r` (clamped at zero).
pub fn floor_usize(r: &Rational) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Smallest integer `m` with `m >= r`, as a big integer.
pub fn ceil_big(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Always `p/q`, including integers (`3/1`) and zero (`0/1`).
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `(p, q)` for a nonnegative `r = p/q` whose parts fit in `u64`.
pub fn to_u64_parts(r: &Rational) -> Option<(u64, u64)> {
    Some((r.numer().to_u64()?, r.denom().to_u64()?))
}

pub fn parse(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    let q: BigInt = q.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format(r))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).map_err(serde::de::Error::custom)
}
