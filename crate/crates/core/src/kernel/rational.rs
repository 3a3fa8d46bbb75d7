//! Exact rational coefficients.
//!
//! [`ExactRational`] is `num_rational::BigRational`, which normalizes on every
//! construction: the denominator is positive, numerator and denominator are
//! coprime, and zero is `0/1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactRational = BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` in reduced form. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_canonical(q: &ExactRational) -> bool {
    let (n, d) = (q.numer(), q.denom());
    d.is_positive() && n.gcd(d).is_one() && (!n.is_zero() || d.is_one())
}

/// Renders `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with an optional leading sign on `p` and a positive `q`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}
