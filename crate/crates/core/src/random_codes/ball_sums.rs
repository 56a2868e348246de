//! Probability that a sum of uniform Hamming-ball points stays in the ball.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index::sample;
use rand::Rng;

use super::campaign::{wilson_interval, WILSON_Z99};
use crate::error::{Error, Result};
use crate::hamming::Word;
use crate::numerics::{ball_size, binomial, floor_int, hyper_pmf, ratio, ExactRational, HyperParams};
use crate::seeding::trial_rng;

/// Largest `|B|^m` enumerated by the exact computation.
pub const BALL_SUM_BUDGET: u128 = 1 << 24;

fn radius(p: &ExactRational, n: usize) -> Result<usize> {
    floor_int(&(p * ratio(n as i64, 1)))
        .to_usize()
        .ok_or_else(|| Error::domain("p must be nonnegative"))
}

/// Exact `Pr[v_1 + ... + v_m in B_q(0, floor(pn))]` for independent uniform points of
/// that ball, sums taken mod q. Binary pairs use the overlap law in closed form; other
/// cases enumerate all m-tuples.
pub fn ball_sum_exact(q: u32, p: &ExactRational, n: usize, m: usize) -> Result<ExactRational> {
    if m == 0 {
        return Err(Error::domain("need at least one summand"));
    }
    let e = radius(p, n)?;
    if q == 2 && m == 2 {
        let size = BigInt::from(ball_size(2, n as u64, e as u64));
        let mut acc = ExactRational::zero();
        for w1 in 0..=e as i64 {
            for w2 in 0..=e as i64 {
                let weight = ExactRational::from_integer(binomial(n as i64, w1) * binomial(n as i64, w2));
                let stay: ExactRational = (0..=w1.min(w2))
                    .filter(|t| (w1 + w2 - 2 * t) as usize <= e)
                    .map(|t| hyper_pmf(HyperParams::new(n as i64, w1, w2), t))
                    .sum();
                acc += weight * stay;
            }
        }
        return Ok(acc / ExactRational::from_integer(&size * &size));
    }
    let ball: Vec<Word> = Word::all(q, n)?.filter(|w| w.weight() <= e).collect();
    let total = (ball.len() as u128)
        .checked_pow(m as u32)
        .filter(|&t| t <= BALL_SUM_BUDGET)
        .ok_or_else(|| Error::over_budget("ball-sum enumeration", u128::MAX, BALL_SUM_BUDGET))?;
    let mut hits: u64 = 0;
    for r in 0..total {
        let mut rest = r;
        let mut sum = Word::zero(q, n)?;
        for _ in 0..m {
            sum = sum.add_mod(&ball[(rest % ball.len() as u128) as usize])?;
            rest /= ball.len() as u128;
        }
        if sum.weight() <= e {
            hits += 1;
        }
    }
    Ok(ExactRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Monte Carlo estimate with a 99% Wilson interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallSumEstimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci: (f64, f64),
}

struct BallSampler {
    q: u32,
    n: usize,
    weights: WeightedIndex<f64>,
}

impl BallSampler {
    fn new(q: u32, n: usize, e: usize) -> Result<Self> {
        // Shell sizes relative to the largest keep the weights finite.
        let shells: Vec<BigInt> = (0..=e)
            .map(|w| binomial(n as i64, w as i64) * BigInt::from(q - 1).pow(w as u32))
            .collect();
        let top = shells.iter().max().cloned().unwrap_or_default();
        let rel: Vec<f64> = shells
            .iter()
            .map(|s| crate::numerics::rational_to_f64(&ExactRational::new(s.clone(), top.clone())))
            .collect();
        let weights = WeightedIndex::new(rel).map_err(|e| Error::domain(format!("ball sampler: {e}")))?;
        Ok(BallSampler { q, n, weights })
    }

    fn add_sample<R: Rng + ?Sized>(&self, acc: &mut Word, rng: &mut R) {
        let w = self.weights.sample(rng);
        for i in sample(rng, self.n, w).into_iter() {
            let v = rng.random_range(1..self.q);
            acc.set_unchecked(i, (acc.get(i) + v) % self.q);
        }
    }
}

pub fn ball_sum_estimate<R: Rng + ?Sized>(
    q: u32,
    p: &ExactRational,
    n: usize,
    m: usize,
    trials: u64,
    rng: &mut R,
) -> Result<BallSumEstimate> {
    if m == 0 {
        return Err(Error::domain("need at least one summand"));
    }
    let e = radius(p, n)?;
    let sampler = BallSampler::new(q, n, e)?;
    let mut hits = 0;
    for _ in 0..trials {
        let mut acc = Word::zero(q, n)?;
        for _ in 0..m {
            sampler.add_sample(&mut acc, rng);
        }
        if acc.weight() <= e {
            hits += 1;
        }
    }
    Ok(BallSumEstimate {
        hits,
        trials,
        estimate: if trials == 0 { f64::NAN } else { hits as f64 / trials as f64 },
        ci: wilson_interval(hits, trials, WILSON_Z99),
    })
}

/// One length of a decay ladder.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderStep {
    pub n: usize,
    pub estimate: BallSumEstimate,
    /// `-(1/n) log_q` of the estimate.
    pub slope: f64,
    /// The same slope from the exact probability, when it was cheap to compute.
    pub exact_slope: Option<f64>,
}

/// Estimates at each length, length i using stream i of `master_seed`.
pub fn ball_sum_ladder(
    q: u32,
    p: &ExactRational,
    ns: &[usize],
    m: usize,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<LadderStep>> {
    let slope = |prob: f64, n: usize| -prob.log(q as f64) / n as f64;
    ns.iter()
        .enumerate()
        .map(|(i, &n)| {
            let estimate = ball_sum_estimate(q, p, n, m, trials, &mut trial_rng(master_seed, i as u64))?;
            let exact_slope = match ball_sum_exact(q, p, n, m) {
                Ok(v) => Some(slope(crate::numerics::rational_to_f64(&v), n)),
                Err(Error::Resource { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(LadderStep {
                n,
                slope: slope(estimate.estimate, n),
                estimate,
                exact_slope,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_small_cases() {
        assert_eq!(ball_sum_exact(2, &ratio(1, 2), 2, 2).unwrap(), ratio(7, 9));
        assert_eq!(ball_sum_exact(3, &ratio(1, 2), 3, 1).unwrap(), ratio(1, 1));
        // The closed form agrees with enumeration.
        for n in 2..=6 {
            let fast = ball_sum_exact(2, &ratio(1, 3), n, 2).unwrap();
            let ball: Vec<Word> = Word::all(2, n).unwrap().filter(|w| 3 * w.weight() <= n).collect();
            let mut hits = 0;
            for a in &ball {
                for b in &ball {
                    if 3 * a.add_mod(b).unwrap().weight() <= n {
                        hits += 1;
                    }
                }
            }
            assert_eq!(fast, ratio(hits, (ball.len() * ball.len()) as i64), "n={n}");
        }
    }

    #[test]
    fn estimate_covers_exact() {
        let est = ball_sum_estimate(2, &ratio(1, 2), 2, 2, 100_000, &mut trial_rng(29, 0)).unwrap();
        assert!(est.ci.0 <= 7.0 / 9.0 && 7.0 / 9.0 <= est.ci.1, "{est:?}");
        let one = ball_sum_estimate(3, &ratio(1, 4), 8, 1, 100, &mut trial_rng(1, 0)).unwrap();
        assert_eq!(one.hits, 100);
    }

    #[test]
    fn ladder_slopes_are_positive() {
        let steps = ball_sum_ladder(2, &ratio(1, 4), &[8, 16, 24, 32], 2, 20_000, 5).unwrap();
        let exact: Vec<f64> = steps.iter().map(|s| s.exact_slope.unwrap()).collect();
        // Exact slopes 0.1449, 0.1276, 0.1178, 0.1114: positive, and decreasing toward the
        // limit at these lengths.
        assert!(exact.iter().all(|&s| s > 0.0));
        assert!(exact.windows(2).all(|w| w[1] < w[0]));
        assert!((exact[0] - 0.1449).abs() < 1e-3);
        assert!(steps.iter().all(|s| s.slope > 0.0));
    }
}
