//! Exact rational combinatorics: binomials, the hypergeometric law, entropy and
//! Hamming-ball volumes.
//!
//! Probabilities and expectations are exact rationals. Entropy-valued quantities are
//! floating point, with [`HighPrec`] available when two floats are too close to call.

mod binomial;
mod entropy;
mod hyper;
mod real;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use binomial::{binomial, binomial_u, falling_factorial, generalized_binomial};
pub use entropy::{ball_fraction, ball_size, binary_entropy, entropy, entropy_power, qary_entropy};
pub use hyper::{hyper_pmf, hyper_tail, q_delta, HyperParams};
pub use real::{HighPrec, Real};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type ExactRational = BigRational;

pub fn ratio(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

/// log2 of a positive big integer, accurate to f64 precision.
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    (v >> shift).to_f64().unwrap().log2() + shift as f64
}

/// log2 of a positive rational; `-inf` for zero.
pub fn log2_rational(r: &ExactRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_big(&r.numer().magnitude().clone()) - log2_big(&r.denom().magnitude().clone())
}

pub fn rational_to_f64(r: &ExactRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * log2_rational(&r.abs()).exp2()
}

pub fn floor_int(r: &ExactRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil_int(r: &ExactRational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Serializes as `num/den` (always with a slash).
pub fn format_rational(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b`, an integer, or a terminating decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let text = text.trim();
    let bad = || Error::parse(format!("malformed rational {text:?}"));
    if let Some((a, b)) = text.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::parse(format!("zero denominator in {text:?}")));
        }
        return Ok(ExactRational::new(num, den));
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty()) || !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let num: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = ExactRational::new(num, den);
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("2/8").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        for bad in ["0.3.1", "1/0", "abc", "", "1/", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_with_slash() {
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(2, 1)), "2/1");
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_int(&ratio(7, 2)), BigInt::from(3));
        assert_eq!(ceil_int(&ratio(7, 2)), BigInt::from(4));
        assert_eq!(floor_int(&ratio(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil_int(&ratio(-7, 2)), BigInt::from(-3));
        assert_eq!(ceil_int(&ratio(4, 2)), BigInt::from(2));
    }

    #[test]
    fn logs_of_big_values() {
        let v = num_traits::pow(BigUint::from(3u32), 2000);
        assert!((log2_big(&v) - 2000.0 * 3f64.log2()).abs() < 1e-9);
        assert!((log2_rational(&ratio(1, 8)) + 3.0).abs() < 1e-15);
    }
}
