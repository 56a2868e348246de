//! Seeded Monte Carlo campaigns over random codes.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::count::{count_witnesses, exact_expected_w};
use super::{CodeKind, RandomCodeSpec};
use crate::bounds::chebyshev_failure_bound;
use crate::checkers::Mode;
use crate::error::{Error, Result};
use crate::numerics::{entropy, format_rational, rational_to_f64, ExactRational};

/// Two-sided 99% normal quantile.
pub const WILSON_Z99: f64 = 2.5758293035489004;

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Message length for a requested gap below capacity: `ceil((1 - h_q(p) - gamma) n)` for
/// errors, `ceil((1 - p - gamma) n)` for erasures, clamped to `[0, n]`, together with the
/// gap the integral length actually realizes.
pub fn k_for_gap(mode: Mode, q: u32, p: &ExactRational, gamma: f64, n: usize) -> Result<(usize, f64)> {
    let pf = rational_to_f64(p);
    let capacity = match mode {
        Mode::MaxRadius => 1.0 - entropy(pf, q)?,
        Mode::Erasure => 1.0 - pf,
        Mode::AvgRadius => return Err(Error::domain("campaigns run in max_radius or erasure mode")),
    };
    // The small slack keeps exact products such as 0.65 * 20 from rounding up.
    let k = ((capacity - gamma) * n as f64 - 1e-9).ceil().clamp(0.0, n as f64) as usize;
    Ok((k, capacity - k as f64 / n as f64))
}

/// Aggregate of one campaign. Statistics are `None` when no trial ran.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub spec: RandomCodeSpec,
    pub mode: Mode,
    pub p: ExactRational,
    /// Radius for errors, revealed-set size for erasures.
    pub parameter: usize,
    pub list_size: usize,
    pub trials: u64,
    pub gamma_requested: Option<f64>,
    pub gamma_realized: Option<f64>,
    pub mean_w: Option<ExactRational>,
    /// Unbiased sample variance (zero for a single trial).
    pub var_w: Option<ExactRational>,
    pub exact_ew: ExactRational,
    pub zeros: u64,
    pub pr_w0: Option<f64>,
    /// 99% Wilson interval for `Pr[W = 0]`.
    pub pr_w0_ci: Option<(f64, f64)>,
    /// `min{1, sample variance / (exact E W)^2}`, when `E W > 0`.
    pub chebyshev_bound: Option<ExactRational>,
}

impl CampaignReport {
    pub const CSV_HEADER: &'static str = "kind,mode,q,n,k,gamma_requested,gamma_realized,p,e,L,trials,meanW,varW,exactEW,prW0,prW0_CI_low,prW0_CI_high,chebyshev_bound,master_seed";

    /// Standard error of the sample mean.
    pub fn standard_error(&self) -> Option<f64> {
        let var = rational_to_f64(self.var_w.as_ref()?);
        Some((var / self.trials as f64).sqrt())
    }

    /// Whether the sample mean lies within `sigmas` standard errors of the exact mean.
    pub fn mean_within(&self, sigmas: f64) -> Option<bool> {
        let mean = self.mean_w.as_ref()?;
        let gap = rational_to_f64(&(mean - &self.exact_ew)).abs();
        let se = self.standard_error()?;
        Some(gap <= sigmas * se || (se == 0.0 && gap == 0.0))
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| x.to_string());
        let rat = |v: &Option<ExactRational>| v.as_ref().map_or_else(|| "NA".to_string(), |x| rational_to_f64(x).to_string());
        [
            self.spec.kind.to_string(),
            self.mode.to_string(),
            self.spec.q.to_string(),
            self.spec.n.to_string(),
            self.spec.k.to_string(),
            opt(self.gamma_requested),
            opt(self.gamma_realized),
            format_rational(&self.p),
            self.parameter.to_string(),
            self.list_size.to_string(),
            self.trials.to_string(),
            rat(&self.mean_w),
            rat(&self.var_w),
            rational_to_f64(&self.exact_ew).to_string(),
            opt(self.pr_w0),
            opt(self.pr_w0_ci.map(|c| c.0)),
            opt(self.pr_w0_ci.map(|c| c.1)),
            rat(&self.chebyshev_bound),
            self.spec.master_seed.to_string(),
        ]
        .join(",")
    }
}

/// Runs `trials` seeded draws, trial t using stream t of the master seed, and aggregates
/// the exact witness counts in trial order.
pub fn mc_campaign(spec: &RandomCodeSpec, mode: Mode, p: &ExactRational, l: usize, trials: u64) -> Result<CampaignReport> {
    let exact_ew = exact_expected_w(spec, mode, p, l)?;
    let counts: Vec<BigInt> = (0..trials)
        .into_par_iter()
        .map(|t| Ok(BigInt::from(count_witnesses(&spec.sample(t)?, mode, p, l)?.w)))
        .collect::<Result<_>>()?;
    let parameter = match mode {
        Mode::Erasure => crate::numerics::ceil_int(&((ExactRational::one() - p) * ExactRational::from_integer(spec.n.into()))),
        _ => crate::numerics::floor_int(&(p * ExactRational::from_integer(spec.n.into()))),
    }
    .to_usize()
    .expect("between 0 and n");
    let mut report = CampaignReport {
        spec: *spec,
        mode,
        p: p.clone(),
        parameter,
        list_size: l,
        trials,
        gamma_requested: None,
        gamma_realized: None,
        mean_w: None,
        var_w: None,
        exact_ew,
        zeros: 0,
        pr_w0: None,
        pr_w0_ci: None,
        chebyshev_bound: None,
    };
    if trials == 0 {
        return Ok(report);
    }
    let t = BigInt::from(trials);
    let sum: BigInt = counts.iter().sum();
    let sum_sq: BigInt = counts.iter().map(|w| w * w).sum();
    let mean = ExactRational::new(sum.clone(), t.clone());
    let var = if trials > 1 {
        ExactRational::new(sum_sq * &t - &sum * &sum, &t * (&t - 1))
    } else {
        ExactRational::zero()
    };
    let zeros = counts.iter().filter(|w| w.is_zero()).count() as u64;
    report.chebyshev_bound = if report.exact_ew > ExactRational::zero() {
        Some(chebyshev_failure_bound(&report.exact_ew, &var)?)
    } else {
        None
    };
    report.mean_w = Some(mean);
    report.var_w = Some(var);
    report.zeros = zeros;
    report.pr_w0 = Some(zeros as f64 / trials as f64);
    report.pr_w0_ci = Some(wilson_interval(zeros, trials, WILSON_Z99));
    Ok(report)
}

/// One list size of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub list_size: usize,
    pub report: CampaignReport,
}

/// Campaigns over a range of list sizes at the message length fixed by a rate gap. Returns
/// the points and the largest L at which at least half the trials still had a witness.
#[allow(clippy::too_many_arguments)]
pub fn list_size_sweep(
    q: u32,
    n: usize,
    kind: CodeKind,
    master_seed: u64,
    mode: Mode,
    p: &ExactRational,
    gamma: f64,
    list_sizes: impl IntoIterator<Item = usize>,
    trials: u64,
) -> Result<(Vec<SweepPoint>, Option<usize>)> {
    let (k, realized) = k_for_gap(mode, q, p, gamma, n)?;
    let spec = RandomCodeSpec::new(q, k, n, kind, master_seed)?;
    let mut points = Vec::new();
    let mut persistent = None;
    for l in list_sizes {
        let mut report = mc_campaign(&spec, mode, p, l, trials)?;
        report.gamma_requested = Some(gamma);
        report.gamma_realized = Some(realized);
        if trials > 0 && 2 * (trials - report.zeros) >= trials {
            persistent = Some(persistent.map_or(l, |m: usize| m.max(l)));
        }
        points.push(SweepPoint { list_size: l, report });
    }
    Ok((points, persistent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100, WILSON_Z99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.05 && hi < 0.07);
        let (lo, hi) = wilson_interval(50, 100, WILSON_Z99);
        assert!(lo < 0.5 && hi > 0.5 && (0.5 - lo - (hi - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn empty_campaign() {
        let spec = RandomCodeSpec::new(2, 2, 6, CodeKind::General, 1).unwrap();
        let r = mc_campaign(&spec, Mode::MaxRadius, &ratio(1, 3), 2, 0).unwrap();
        assert!(r.mean_w.is_none() && r.pr_w0.is_none());
        assert!(r.csv_row().contains("NA"));
        assert_eq!(r.csv_row().split(',').count(), CampaignReport::CSV_HEADER.split(',').count());
    }

    #[test]
    fn mean_tracks_exact_expectation() {
        let spec = RandomCodeSpec::new(2, 2, 8, CodeKind::General, 7).unwrap();
        let r = mc_campaign(&spec, Mode::MaxRadius, &ratio(1, 4), 2, 2000).unwrap();
        assert!(r.mean_within(4.0).unwrap());
        let (lo, _) = r.pr_w0_ci.unwrap();
        if let Some(b) = &r.chebyshev_bound {
            assert!(lo <= rational_to_f64(b) + 1e-12);
        }
        let spec = RandomCodeSpec::new(3, 2, 5, CodeKind::Linear, 7).unwrap();
        let r = mc_campaign(&spec, Mode::Erasure, &ratio(2, 5), 2, 2000).unwrap();
        assert!(r.mean_within(4.0).unwrap());
    }

    #[test]
    fn gap_to_length() {
        let (k, g) = k_for_gap(Mode::Erasure, 2, &ratio(1, 4), 0.1, 20).unwrap();
        assert_eq!(k, 13);
        assert!((g - 0.1).abs() < 1e-12);
        let (k, _) = k_for_gap(Mode::MaxRadius, 2, &ratio(1, 2), 0.1, 20).unwrap();
        assert_eq!(k, 0);
    }

    #[test]
    fn sweep_reports_persistence() {
        let (points, top) =
            list_size_sweep(2, 8, CodeKind::General, 3, Mode::Erasure, &ratio(1, 4), 0.1, 1..=4, 50).unwrap();
        assert_eq!(points.len(), 4);
        // Witnesses for L = 1 exist in every code.
        assert_eq!(points[0].report.zeros, 0);
        assert!(top.is_some());
    }
}
