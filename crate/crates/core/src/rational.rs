//! Arbitrary-precision rationals, backed by `num-rational`.
//!
//! `BigRational` keeps values in lowest terms with a positive denominator,
//! and zero is `0/1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn sign(s: i32) -> Rational {
    int(s as i64)
}

/// `n` or `n/d`.
pub fn to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let bad = |why: &str| Error::parse(format!("rational {s:?}"), why.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Builds a rational from a numerator/denominator pair, rejecting anything
/// that is not already in canonical form.
pub fn from_canonical_parts(num: i64, den: i64) -> std::result::Result<Rational, String> {
    if den <= 0 {
        return Err(format!("denominator must be positive, got {den}"));
    }
    let q = frac(num, den);
    if q.denom() != &BigInt::from(den) {
        return Err(format!("{num}/{den} is not in lowest terms"));
    }
    Ok(q)
}

/// Numerator and denominator as `i64`, if they fit.
pub fn to_parts(q: &Rational) -> Option<(i64, i64)> {
    use num_traits::ToPrimitive;
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

pub fn is_unit(q: &Rational) -> bool {
    q.abs().is_one()
}
