use num_bigint::BigUint;
use num_traits::{One, Pow};

use super::binomial::binomial_u;
use super::real::Real;
use super::ExactRational;
use crate::error::{Error, Result};

/// Binary entropy h(z) = -z log z - (1-z) log(1-z) (base 2), with h(0) = h(1) = 0.
pub fn binary_entropy<R: Real>(z: &R) -> R {
    let zero = R::int(0);
    let one = R::int(1);
    if *z <= zero || *z >= one {
        return zero;
    }
    let w = one - z.clone();
    -(z.clone() * z.log2()) - w.clone() * w.log2()
}

/// q-ary entropy h_q(z) = z log_q(q-1) - z log_q z - (1-z) log_q(1-z).
pub fn qary_entropy<R: Real>(z: &R, q: u32) -> R {
    if q == 2 {
        return binary_entropy(z);
    }
    let zero = R::int(0);
    let log_q = R::int(q as i64).log2();
    if *z <= zero {
        return zero;
    }
    let mut bits = z.clone() * R::int(q as i64 - 1).log2();
    if *z < R::int(1) {
        bits = bits + binary_entropy(z);
    }
    bits / log_q
}

/// Entropy in `f64`; binary for q = 2, q-ary otherwise.
pub fn entropy(z: f64, q: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) || z.is_nan() {
        return Err(Error::domain(format!("entropy argument {z} outside [0, 1]")));
    }
    if q < 2 {
        return Err(Error::domain(format!("alphabet size {q} < 2")));
    }
    Ok(qary_entropy(&z, q))
}

/// |B_q(0, r)| = sum_{i <= r} C(n, i) (q-1)^i.
pub fn ball_size(q: u32, n: u64, r: u64) -> BigUint {
    let base = BigUint::from(q - 1);
    (0..=r.min(n))
        .map(|i| binomial_u(n, i) * Pow::pow(&base, i))
        .sum()
}

/// Fraction of [q]^n inside a Hamming ball of radius r.
pub fn ball_fraction(q: u32, n: u64, r: i64) -> Result<ExactRational> {
    if q < 2 {
        return Err(Error::domain(format!("alphabet size {q} < 2")));
    }
    if r < 0 || r as u64 > n {
        return Err(Error::domain(format!("radius {r} outside [0, {n}]")));
    }
    let total = Pow::pow(&BigUint::from(q), n);
    Ok(ExactRational::new(
        ball_size(q, n, r as u64).into(),
        total.into(),
    ))
}

/// q^{h_q(k/n) n} as an exact rational: (q-1)^k n^n / (k^k (n-k)^(n-k)).
pub fn entropy_power(q: u32, n: u64, k: u64) -> ExactRational {
    let pow = |b: u64, e: u64| -> BigUint {
        if e == 0 {
            BigUint::one()
        } else {
            Pow::pow(&BigUint::from(b), e)
        }
    };
    let num = pow(q as u64 - 1, k) * pow(n, n);
    let den = pow(k, k) * pow(n - k, n - k);
    ExactRational::new(num.into(), den.into())
}
