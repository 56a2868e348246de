use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::ExactRational;

/// C(n, k), with C(n, k) = 0 outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    BigInt::from(binomial_u(n as u64, k as u64))
}

/// Unsigned binomial; zero when k > n.
pub fn binomial_u(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut small: u128 = 1;
    for i in 1..=k {
        let factor = (n - k + i) as u128;
        match small.checked_mul(factor) {
            Some(v) => small = v / i as u128,
            None => return binomial_big(n, k),
        }
    }
    BigUint::from(small)
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// x (x-1) ... (x-k+1).
pub fn falling_factorial(x: &BigInt, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (x - BigInt::from(i)))
}

/// C(z, k) = z (z-1) ... (z-k+1) / k! for rational z.
pub fn generalized_binomial(z: &ExactRational, k: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    for i in 0..k {
        acc *= (z - ExactRational::from_integer(BigInt::from(i))) / ExactRational::from_integer(BigInt::from(i + 1));
    }
    acc
}
