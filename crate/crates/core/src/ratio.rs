//! Exact rational parsing and formatting: "p/q" with reduced positive
//! denominator, plain integers when the denominator is 1.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Parses "p/q" or a plain integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::input("empty rational string"));
    }
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad numerator in rational '{s}'")))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad denominator in rational '{s}'")))?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in rational '{s}'")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s
                .parse()
                .map_err(|_| Error::input(format!("bad rational '{s}'")))?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Formats a rational as "p/q" (reduced, positive q) or a plain integer.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for n/d.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// True when the rational has no fractional part and is >= 0.
pub fn is_nonneg(r: &BigRational) -> bool {
    !r.is_negative()
}
