use num_bigint::BigInt;
use num_traits::Zero;

use super::binomial::binomial;
use super::ExactRational;
use crate::error::{Error, Result};

/// Population size n, marked count m, sample size s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HyperParams {
    pub n: i64,
    pub m: i64,
    pub s: i64,
}

impl HyperParams {
    pub fn new(n: i64, m: i64, s: i64) -> Self {
        HyperParams { n, m, s }
    }

    /// Whether the pmf sums to one (n >= max{m, s}, all nonnegative).
    pub fn is_proper(&self) -> bool {
        self.m >= 0 && self.s >= 0 && self.n >= self.m.max(self.s)
    }

    /// Parameters with the roles of m and s swapped.
    pub fn interchanged(&self) -> Self {
        HyperParams::new(self.n, self.s, self.m)
    }
}

fn in_support(p: &HyperParams, t: i64) -> bool {
    p.is_proper() && t >= 0 && t <= p.m.min(p.s) && p.s - t <= p.n - p.m
}

/// Numerator of the pmf over the common denominator C(n, s).
fn pmf_numerator(p: &HyperParams, t: i64) -> BigInt {
    if !in_support(p, t) {
        return BigInt::zero();
    }
    binomial(p.m, t) * binomial(p.n - p.m, p.s - t)
}

/// f(n, m, s, t) = C(m,t) C(n-m,s-t) / C(n,s); zero whenever n < max{m, s},
/// t > min{m, s}, t < 0 or s - t > n - m.
pub fn hyper_pmf(p: HyperParams, t: i64) -> ExactRational {
    if !in_support(&p, t) {
        return ExactRational::zero();
    }
    ExactRational::new(pmf_numerator(&p, t), binomial(p.n, p.s))
}

/// Sum of the pmf over t >= tau.
pub fn hyper_tail(p: HyperParams, tau: i64) -> ExactRational {
    if !p.is_proper() {
        return ExactRational::zero();
    }
    let hi = p.m.min(p.s);
    let num: BigInt = (tau.max(0)..=hi).map(|t| pmf_numerator(&p, t)).sum();
    ExactRational::new(num, binomial(p.n, p.s))
}

/// Probability that a codeword c at distance `distance` from c* lands in the attack list
/// when `sample` coordinates of Supp(c*) are drawn: the hypergeometric tail
/// sum_{w >= threshold} f(weight, weight - distance/2, sample, w).
///
/// Both codewords have weight `weight`, so their distance is even and their supports
/// share `weight - distance/2` coordinates.
pub fn q_delta(weight: i64, distance: i64, sample: i64, threshold: i64) -> Result<ExactRational> {
    if distance < 0 || distance % 2 != 0 {
        return Err(Error::domain(format!(
            "distance {distance} between equal-weight binary words must be even and nonnegative"
        )));
    }
    Ok(hyper_tail(
        HyperParams::new(weight, weight - distance / 2, sample),
        threshold,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    // Draw every s-subset of an n-set whose first m elements are marked.
    fn enumerate_pmf(n: usize, m: usize, s: usize, t: usize) -> ExactRational {
        let all = crate::hamming::combinations(n, s).collect::<Vec<_>>();
        let hits = all
            .iter()
            .filter(|sub| sub.iter().filter(|&&i| i < m).count() == t)
            .count();
        r(hits as i64, all.len() as i64)
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(hyper_pmf(HyperParams::new(4, 2, 2), 1), r(2, 3));
        assert_eq!(enumerate_pmf(4, 2, 2, 1), r(2, 3));
        assert_eq!(hyper_pmf(HyperParams::new(5, 5, 3), 3), r(1, 1));
        assert_eq!(hyper_pmf(HyperParams::new(4, 2, 2), 3), r(0, 1));
    }

    #[test]
    fn pmf_matches_enumeration() {
        for n in 0..8usize {
            for m in 0..=n {
                for s in 0..=n {
                    for t in 0..=n {
                        let p = HyperParams::new(n as i64, m as i64, s as i64);
                        assert_eq!(hyper_pmf(p, t as i64), enumerate_pmf(n, m, s, t));
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_parameters_give_zero() {
        assert!(hyper_pmf(HyperParams::new(3, 4, 1), 1).is_zero());
        assert!(hyper_pmf(HyperParams::new(3, 1, 4), 1).is_zero());
        assert!(hyper_pmf(HyperParams::new(5, 2, 2), -1).is_zero());
        assert!(hyper_tail(HyperParams::new(3, 4, 1), 0).is_zero());
    }

    #[test]
    fn tail_examples() {
        assert_eq!(hyper_tail(HyperParams::new(4, 2, 2), 0), r(1, 1));
        assert_eq!(hyper_tail(HyperParams::new(4, 2, 2), -3), r(1, 1));
        assert_eq!(hyper_tail(HyperParams::new(4, 2, 2), 2), r(1, 6));
        assert_eq!(hyper_tail(HyperParams::new(4, 2, 2), 1), r(5, 6));
    }

    #[test]
    fn q_delta_examples() {
        // identical codewords: every sampled coordinate is shared
        for beta in 0..=5 {
            assert_eq!(q_delta(5, 0, beta, beta).unwrap(), r(1, 1));
        }
        // disjoint supports
        assert!(q_delta(4, 8, 2, 1).unwrap().is_zero());
        assert_eq!(q_delta(4, 4, 2, 1).unwrap(), r(5, 6));
        assert!(q_delta(4, 3, 2, 1).is_err());
    }
}
