//! Exact rational scalars and boundary conversions.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, the scalar type of every exact computation.
pub type Rat = BigRational;

/// Shorthand for a rational from small integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The exact binary value of a finite float.
pub fn from_f64_exact(x: f64) -> Result<Rat, Error> {
    Rat::from_float(x).ok_or(Error::NonFiniteNumber)
}

/// Nearest double to an exact rational. Used only at reporting boundaries.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"num/den"`, integer, or decimal strings into an exact rational.
///
/// Decimal strings are read exactly (`"0.25"` is 1/4, not the binary double);
/// an optional exponent suffix (`"2.5e-3"`) scales by powers of ten.
pub fn parse_rational(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidNumber(s.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidNumber(s.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidNumber(s.to_string()))?;
        if d.is_zero() {
            return Err(Error::InvalidNumber(s.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    parse_decimal(s).ok_or_else(|| Error::InvalidNumber(s.to_string()))
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let rational = if scale >= 0 {
        Rat::from_integer(n * num::pow(ten, scale as usize))
    } else {
        Rat::new(n, num::pow(ten, (-scale) as usize))
    };
    Some(rational)
}

/// `|a - b| <= tol` with everything exact.
pub fn within(a: &Rat, b: &Rat, tol: &Rat) -> bool {
    (a - b).abs() <= *tol
}
