//! The invariant suite behind `verify-facts`: exact hypergeometric laws, centroid
//! optimality, binomial and ball-size entropy sandwiches, the inequality sweeps and the
//! overlap-expectation ladder. Every check yields a [`FactSummary`].

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{
    ladder_onset, overlap_exact_expectation, sweep_inequality, verify_inequality, GridOutcome, InequalityGrid,
    InequalityId,
};
use crate::hamming::{centroid, dist_stats, ListTuple, Word};
use crate::numerics::{
    ball_fraction, binary_entropy, binomial, binomial_u, entropy_power, hyper_pmf, hyper_tail, log2_big,
    log2_rational, q_delta, qary_entropy, ratio, ExactRational, HyperParams,
};
use crate::seeding::trial_rng;

/// Outcome of one invariant over its whole grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FactSummary {
    pub fact_id: String,
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
    /// Smallest margin seen, where the check has a numeric margin.
    pub tightest: Option<f64>,
    /// Short free-form note, without commas.
    pub note: String,
}

impl FactSummary {
    pub const CSV_HEADER: &'static str = "fact_id,checked,skipped,violations,tightest_margin,satisfied";

    fn new(fact_id: &str) -> Self {
        FactSummary {
            fact_id: fact_id.to_string(),
            checked: 0,
            skipped: 0,
            violations: 0,
            tightest: None,
            note: String::new(),
        }
    }

    pub fn satisfied(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
    }

    fn margin(&mut self, m: f64) {
        self.tightest = Some(self.tightest.map_or(m, |t| t.min(m)));
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.fact_id,
            self.checked,
            self.skipped,
            self.violations,
            self.tightest.map_or_else(|| "NA".to_string(), |m| format!("{m:e}")),
            self.satisfied()
        )
    }
}

/// Grid sizes for the suite. The defaults are the full-resolution grids.
#[derive(Clone, Debug, PartialEq)]
pub struct FactsConfig {
    pub seed: u64,
    /// Largest population for the hypergeometric laws.
    pub hyper_n_max: u64,
    /// Largest weight for the monotonicity of Q.
    pub q_weight_max: i64,
    /// Largest length for the binomial sandwich.
    pub binomial_n_max: u64,
    /// Largest length for the ball-size sandwich.
    pub ball_n_max: u64,
    pub centroid_lists: u64,
    /// Inequality grid step is `1 / sweep_den`.
    pub sweep_den: i64,
    pub overlap_ladder: Vec<u64>,
}

impl Default for FactsConfig {
    fn default() -> Self {
        FactsConfig {
            seed: 0,
            hyper_n_max: 30,
            q_weight_max: 40,
            binomial_n_max: 60,
            ball_n_max: 60,
            centroid_lists: 1000,
            sweep_den: 1000,
            overlap_ladder: (1..=16).map(|k| 8 * k).collect(),
        }
    }
}

/// Interchange `f(n,m,s,t) = f(n,s,m,t)` and normalization, for all `n <= n_max`.
pub fn check_interchange(n_max: u64) -> FactSummary {
    let rows: Vec<FactSummary> = (0..=n_max as i64)
        .into_par_iter()
        .map(|n| {
            let mut s = FactSummary::new("fact7");
            for m in 0..=n {
                for k in 0..=n {
                    let p = HyperParams::new(n, m, k);
                    let mut total = ExactRational::zero();
                    for t in -1..=n + 1 {
                        let f = hyper_pmf(p, t);
                        s.record(f == hyper_pmf(p.interchanged(), t));
                        total += f;
                    }
                    s.record(total == ratio(1, 1));
                }
            }
            s
        })
        .collect();
    merge("fact7", rows)
}

/// Dominance: the tail at `tau` never decreases as the marked count grows. Every pair
/// `m >= m'` is compared, on tails scaled by `C(n,s)` to integers.
pub fn check_dominance(n_max: u64) -> FactSummary {
    let rows: Vec<FactSummary> = (0..=n_max as i64)
        .into_par_iter()
        .map(|n| {
            let mut s = FactSummary::new("fact8");
            for k in 0..=n {
                let scale = ExactRational::from_integer(binomial(n, k));
                // tails[m][tau + 1] for tau in -1..=n + 1
                let mut tails: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize + 1);
                for m in 0..=n {
                    let row = (-1..=n + 1)
                        .map(|tau| {
                            let scaled = hyper_tail(HyperParams::new(n, m, k), tau) * &scale;
                            if !scaled.is_integer() {
                                s.record(false);
                            }
                            scaled.to_integer()
                        })
                        .collect();
                    tails.push(row);
                }
                for m in 0..tails.len() {
                    for m2 in 0..=m {
                        for (hi, lo) in tails[m].iter().zip(&tails[m2]) {
                            s.record(hi >= lo);
                        }
                    }
                }
            }
            s
        })
        .collect();
    merge("fact8", rows)
}

/// Q is non-increasing in the distance, for every weight up to `weight_max`, sample size
/// and threshold. The pmf sums are cross-checked against [`q_delta`] at the
/// three-quarter threshold.
pub fn check_q_monotone(weight_max: i64) -> FactSummary {
    let rows: Vec<FactSummary> = (1..=weight_max)
        .into_par_iter()
        .map(|w| {
            let mut s = FactSummary::new("q_monotone");
            for sample in 0..=w {
                let mut prev: Option<Vec<ExactRational>> = None;
                for dn in 0..=w {
                    let p = HyperParams::new(w, w - dn, sample);
                    let mut tail = vec![ExactRational::zero(); sample as usize + 2];
                    for t in (0..=sample).rev() {
                        tail[t as usize] = &tail[t as usize + 1] + hyper_pmf(p, t);
                    }
                    let thr = (3 * sample + 3) / 4;
                    s.record(q_delta(w, 2 * dn, sample, thr).ok().as_ref() == Some(&tail[thr as usize]));
                    if let Some(prev) = &prev {
                        for (a, b) in tail.iter().zip(prev) {
                            s.record(a <= b);
                        }
                    }
                    prev = Some(tail);
                }
            }
            s
        })
        .collect();
    merge("q_monotone", rows)
}

/// Plurality centroids attain the exhaustive minimum of the distance sum on random lists
/// with `q^n <= 2^16`.
pub fn check_centroid(lists: u64, seed: u64) -> FactSummary {
    let rows: Vec<FactSummary> = (0..lists)
        .into_par_iter()
        .map(|i| {
            let mut s = FactSummary::new("fact2");
            let mut rng = trial_rng(seed, i);
            let q: u32 = rng.random_range(2..=4);
            let n_max = [16, 10, 8][q as usize - 2];
            let n = rng.random_range(3..=n_max);
            let l = rng.random_range(1..=5);
            let mut words: Vec<Word> = Vec::new();
            while words.len() < l {
                let mut w = Word::zero(q, n).expect("valid shape");
                for j in 0..n {
                    w.set(j, rng.random_range(0..q)).expect("symbol below q");
                }
                if !words.contains(&w) {
                    words.push(w);
                }
            }
            let list = ListTuple::new(words).expect("distinct words");
            let at_centroid = dist_stats(&centroid(&list), &list).expect("same shape").sum_dist;
            let best = Word::all(q, n)
                .expect("within budget")
                .map(|x| dist_stats(&x, &list).expect("same shape").sum_dist)
                .min()
                .expect("nonempty space");
            s.record(at_centroid == best);
            s
        })
        .collect();
    merge("fact2", rows)
}

/// `C(n, k) <= 2^{h(k/n) n}` exactly for every `n <= n_max`, and for fixed `z` the gap
/// `h(z) - (1/n) log C(n, zn)` is positive and strictly decreasing along `n`.
pub fn check_binomial_sandwich(n_max: u64) -> Vec<FactSummary> {
    let mut upper = FactSummary::new("fact9_upper");
    for n in 1..=n_max {
        for k in 0..=n {
            let c = ExactRational::from_integer(binomial_u(n, k).into());
            upper.record(c <= entropy_power(2, n, k));
        }
    }
    let mut lower = FactSummary::new("fact9_gap");
    for (a, b) in [(1, 2), (1, 3), (1, 4), (2, 5), (1, 6)] {
        let z = a as f64 / b as f64;
        let hz = binary_entropy(&z);
        let mut prev = f64::INFINITY;
        for n in (b..=n_max).step_by(b as usize) {
            let gap = hz - log2_big(&binomial_u(n, n * a / b)) / n as f64;
            lower.margin(gap);
            lower.record(gap > 0.0 && gap < prev);
            prev = gap;
        }
    }
    vec![upper, lower]
}

/// `mu = |B_q(pn)| / q^n <= q^{(h_q(p) - 1) n}` exactly, and the gap
/// `(h_q(p) - 1) - (1/n) log_q mu` is positive and decreasing along `n`.
pub fn check_ball_sandwich(n_max: u64) -> Vec<FactSummary> {
    let mut upper = FactSummary::new("fact27_upper");
    let mut lower = FactSummary::new("fact27_gap");
    for q in 2u32..=5 {
        for (a, b) in [(1u64, 5u64), (1, 4), (1, 3)] {
            let pf = a as f64 / b as f64;
            let exponent = qary_entropy(&pf, q) - 1.0;
            let mut prev = f64::INFINITY;
            for n in (b..=n_max).step_by(b as usize) {
                let r = n * a / b;
                let mu = ball_fraction(q, n, r as i64).expect("radius within length");
                let space = ExactRational::from_integer(BigInt::from(q).pow(n as u32));
                upper.record(mu <= entropy_power(q, n, r) / space);
                let gap = exponent - log2_rational(&mu) / (q as f64).log2() / n as f64;
                lower.margin(gap);
                lower.record(gap > 0.0 && gap < prev);
                prev = gap;
            }
        }
    }
    vec![upper, lower]
}

/// Entropy inequality sweeps at step `1/den`.
pub fn check_sweeps(den: i64) -> Vec<FactSummary> {
    [
        InequalityId::EntropyGap,
        InequalityId::EntropySandwich,
        InequalityId::A1Bound,
        InequalityId::CombinedBound,
    ]
    .into_iter()
    .map(|id| {
        let grid = if den == 1000 {
            InequalityGrid::standard(id)
        } else {
            InequalityGrid::coarse(id, den)
        };
        let sweep = sweep_inequality(id, &grid);
        FactSummary {
            fact_id: id.as_str().to_string(),
            checked: sweep.checked,
            skipped: sweep.skipped_total(),
            violations: sweep.violation_count,
            tightest: sweep.tightest.as_ref().map(|r| r.margin),
            note: format!("{} points decided in high precision", sweep.highprec_points),
        }
    })
    .collect()
}

/// Exact value 13/24 at n = 4, p = 1/2 against enumeration, and a strictly decreasing
/// exponent along the ladder. The onset of the asymptotic bound is reported in the note.
pub fn check_overlap_ladder(ladder: &[u64]) -> FactSummary {
    let mut s = FactSummary::new("lemma30");
    let exact = overlap_exact_expectation(4, 2).expect("pn <= n");
    s.record(exact == ratio(13, 24) && exact == enumerate_overlap(4, 2));
    let grid = InequalityGrid {
        n: ladder.to_vec(),
        ..InequalityGrid::standard(InequalityId::OverlapExpectation)
    };
    let reports: Vec<_> = verify_inequality(InequalityId::OverlapExpectation, &grid)
        .into_iter()
        .filter_map(|o| match o {
            GridOutcome::Checked(r) => Some(r),
            GridOutcome::Skipped { .. } => None,
        })
        .collect();
    for pair in reports.windows(2) {
        s.record(pair[1].lhs < pair[0].lhs);
    }
    s.note = match ladder_onset(&reports) {
        Some(n0) => format!("exponent below -p(1-p)/8 from n = {n0}"),
        None => "exponent not yet below -p(1-p)/8 on this ladder".to_string(),
    };
    s
}

/// `E[2^{-|T \ S|}]` over all pairs of `(n - pn)`-subsets, by enumeration.
pub fn enumerate_overlap(n: usize, pn: usize) -> ExactRational {
    let subsets: Vec<Vec<usize>> = crate::hamming::combinations(n, n - pn).collect();
    let mut acc = ExactRational::zero();
    for s in &subsets {
        for t in &subsets {
            let outside = t.iter().filter(|i| !s.contains(i)).count();
            acc += ratio(1, 1i64 << outside);
        }
    }
    let pairs = subsets.len() * subsets.len();
    acc / ratio(pairs.to_i64().expect("small enumeration"), 1)
}

fn merge(fact_id: &str, parts: Vec<FactSummary>) -> FactSummary {
    let mut s = FactSummary::new(fact_id);
    for p in parts {
        s.checked += p.checked;
        s.skipped += p.skipped;
        s.violations += p.violations;
        if let Some(m) = p.tightest {
            s.margin(m);
        }
    }
    s
}

/// Runs the whole suite in a fixed order.
pub fn verify_facts(cfg: &FactsConfig) -> Vec<FactSummary> {
    let mut out = vec![
        check_centroid(cfg.centroid_lists, cfg.seed),
        check_interchange(cfg.hyper_n_max),
        check_dominance(cfg.hyper_n_max),
        check_q_monotone(cfg.q_weight_max),
    ];
    out.extend(check_binomial_sandwich(cfg.binomial_n_max));
    out.extend(check_ball_sandwich(cfg.ball_n_max));
    out.extend(check_sweeps(cfg.sweep_den));
    out.push(check_overlap_ladder(&cfg.overlap_ladder));
    out
}
