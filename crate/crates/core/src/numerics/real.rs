//! A small real-number abstraction so inequality formulas can be written once and
//! evaluated either in `f64` or in fixed-point arithmetic with 192 fractional bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactRational;

pub trait Real:
    Clone
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &ExactRational) -> Self;
    /// Natural logarithm; the argument must be positive.
    fn ln(&self) -> Self;
    fn ln2() -> Self;
    fn to_f64(&self) -> f64;

    fn int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn log2(&self) -> Self {
        self.ln() / Self::ln2()
    }

    /// log2(e).
    fn log2_e() -> Self {
        Self::int(1) / Self::ln2()
    }

    fn powi(&self, k: u32) -> Self {
        (0..k).fold(Self::int(1), |acc, _| acc * self.clone())
    }

    fn is_positive(&self) -> bool {
        *self > Self::int(0)
    }
}

impl Real for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &ExactRational) -> Self {
        super::rational_to_f64(r)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn ln2() -> Self {
        std::f64::consts::LN_2
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn log2(&self) -> Self {
        f64::log2(*self)
    }

    fn powi(&self, k: u32) -> Self {
        f64::powi(*self, k as i32)
    }
}

/// Fixed-point value `mantissa / 2^FRAC_BITS`.
#[derive(Clone, PartialEq, Eq)]
pub struct HighPrec {
    mantissa: BigInt,
}

impl HighPrec {
    pub const FRAC_BITS: u32 = 192;

    fn raw(mantissa: BigInt) -> Self {
        HighPrec { mantissa }
    }

    fn one_raw() -> BigInt {
        BigInt::one() << Self::FRAC_BITS
    }

    // 2 * atanh(t) for a fixed-point t with |t| < 1/2.
    fn two_atanh(t: &BigInt) -> BigInt {
        let t2 = (t * t) >> Self::FRAC_BITS;
        let mut power = t.clone();
        let mut sum = BigInt::zero();
        let mut k = 1u32;
        while !power.is_zero() {
            sum += &power / k;
            power = (&power * &t2) >> Self::FRAC_BITS;
            k += 2;
        }
        sum * 2
    }
}

fn ln2_raw() -> &'static BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    LN2.get_or_init(|| {
        let third = HighPrec::one_raw() / 3;
        HighPrec::two_atanh(&third)
    })
}

impl fmt::Debug for HighPrec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HighPrec({:.18e})", self.to_f64())
    }
}

impl PartialOrd for HighPrec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.mantissa.cmp(&other.mantissa))
    }
}

impl Add for HighPrec {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::raw(self.mantissa + rhs.mantissa)
    }
}

impl Sub for HighPrec {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::raw(self.mantissa - rhs.mantissa)
    }
}

impl Mul for HighPrec {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::raw((self.mantissa * rhs.mantissa) >> Self::FRAC_BITS)
    }
}

impl Div for HighPrec {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::raw((self.mantissa << Self::FRAC_BITS) / rhs.mantissa)
    }
}

impl Neg for HighPrec {
    type Output = Self;
    fn neg(self) -> Self {
        Self::raw(-self.mantissa)
    }
}

impl Real for HighPrec {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::raw((BigInt::from(num) << Self::FRAC_BITS) / BigInt::from(den))
    }

    fn from_rational(r: &ExactRational) -> Self {
        Self::raw((r.numer() << Self::FRAC_BITS) / r.denom())
    }

    fn ln(&self) -> Self {
        assert!(self.mantissa.is_positive(), "ln of non-positive value");
        // Reduce to y = x / 2^k in [1, 2), then ln y = 2 atanh((y-1)/(y+1)).
        let k = self.mantissa.bits() as i64 - 1 - Self::FRAC_BITS as i64;
        let y = if k >= 0 {
            &self.mantissa >> k as u32
        } else {
            &self.mantissa << (-k) as u32
        };
        let one = Self::one_raw();
        let t = ((&y - &one) << Self::FRAC_BITS) / (&y + &one);
        Self::raw(Self::two_atanh(&t) + ln2_raw() * k)
    }

    fn ln2() -> Self {
        Self::raw(ln2_raw().clone())
    }

    fn to_f64(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(Self::FRAC_BITS as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn highprec_logs_match_f64() {
        for (num, den) in [(1, 3), (1, 2), (3, 4), (7, 1), (1000, 7), (1, 1000)] {
            let x = HighPrec::from_ratio(num, den);
            let expect = (num as f64 / den as f64).ln();
            assert!((x.ln().to_f64() - expect).abs() < 1e-15, "{num}/{den}");
        }
        assert!((HighPrec::ln2().to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        assert!((HighPrec::int(8).log2().to_f64() - 3.0).abs() < 1e-30);
    }

    #[test]
    fn highprec_resolves_below_f64_epsilon() {
        // 1 + 2^-80 is indistinguishable from 1 in f64 but not here.
        let tiny = HighPrec::raw(BigInt::one() << (HighPrec::FRAC_BITS - 80));
        let one = HighPrec::int(1);
        assert!(one.clone() + tiny.clone() > one);
        let ln = (one + tiny.clone()).ln();
        let diff = ln - tiny;
        assert!(diff.to_f64().abs() < 1e-45);
    }
}
