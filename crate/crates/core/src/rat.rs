//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-14/3"`, `" 2 / 4 "`.
pub fn parse(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    let t = s.trim().replace('\u{2212}', "-");
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("`{s}` has zero denominator")));
    }
    Ok(Q::new(n, d))
}

pub fn fmt(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

pub fn floor_int(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil_int(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// `floor(sqrt(x))` for `x >= 0`, exactly.
pub fn floor_sqrt(x: &Q) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    // floor(sqrt(p/q)) = floor(isqrt(p*q)/q)
    let (p, d) = (x.numer(), x.denom());
    (p * d).sqrt().div_floor(d)
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
