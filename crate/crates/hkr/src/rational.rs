use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `(-1)^e` for any integer exponent.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

pub fn sign_i(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(one(), |acc, k| acc * q(k))
}

pub fn binom(n: usize, k: usize) -> Q {
    if k > n {
        return zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Accepts `3`, `-7`, `2/3`, `-1/4`, surrounding whitespace allowed.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse {
            what: "rational",
            at: 0,
            msg: "empty".into(),
        });
    }
    let bad = |msg: &str| Error::Parse {
        what: "rational",
        at: 0,
        msg: format!("{msg}: {t:?}"),
    };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let digits_ok = |x: &str| {
        let x = x.strip_prefix('-').unwrap_or(x);
        !x.is_empty() && x.len() <= 400 && x.bytes().all(|c| c.is_ascii_digit())
    };
    if !digits_ok(num) || !digits_ok(den) {
        return Err(bad("not an integer ratio"));
    }
    let n = BigInt::from_str(num).map_err(|_| bad("numerator"))?;
    let d = BigInt::from_str(den).map_err(|_| bad("denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_unit_sign(x: &Q) -> bool {
    x.is_integer() && x.abs().is_one()
}
