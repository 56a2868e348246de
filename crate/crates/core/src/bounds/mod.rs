//! Closed-form rate and list-size bounds, and sweep verifiers for the entropy
//! inequalities that the rate bounds rest on.
//!
//! Every bound is written once, generic over [`Real`], and evaluated in `f64`. When the
//! two sides of a comparison land within [`FALLBACK_WINDOW`] of each other the
//! comparison is redone in [`HighPrec`] so that rounding can never flip a verdict.

mod inequalities;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{self, format_rational, ratio, ExactRational, HighPrec, Real};

pub use inequalities::{
    overlap_exact_expectation, ladder_onset, sweep_inequality, verify_inequality, Axis,
    GridOutcome, InequalityGrid, InequalityId, SweepSummary,
};

/// Margins closer to zero than this are re-evaluated in high precision.
pub const FALLBACK_WINDOW: f64 = 1e-9;
/// Slack allowed on an `f64` margin before a point counts as a violation.
pub const F64_TOLERANCE: f64 = 1e-12;
/// Slack allowed on a high-precision margin (192 fractional bits).
const HIGHPREC_TOLERANCE: f64 = 1e-45;

/// Parameters shared by all bounds. Unused fields stay `None`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundParams {
    pub p: Option<ExactRational>,
    pub list_size: Option<u64>,
    pub lambda: Option<ExactRational>,
    pub gamma: Option<ExactRational>,
    pub q: Option<u32>,
    pub eps: Option<ExactRational>,
    pub z: Option<ExactRational>,
    pub n: Option<u64>,
}

impl BoundParams {
    pub fn with_p(mut self, p: ExactRational) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_list_size(mut self, l: u64) -> Self {
        self.list_size = Some(l);
        self
    }

    pub fn with_lambda(mut self, lambda: ExactRational) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_gamma(mut self, gamma: ExactRational) -> Self {
        self.gamma = Some(gamma);
        self
    }

    pub fn with_q(mut self, q: u32) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_eps(mut self, eps: ExactRational) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn with_z(mut self, z: ExactRational) -> Self {
        self.z = Some(z);
        self
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    fn need_p(&self) -> Result<&ExactRational> {
        let p = self.p.as_ref().ok_or_else(|| Error::domain("missing parameter p"))?;
        if !p.is_positive() || *p >= ratio(1, 2) {
            return Err(Error::domain(format!(
                "p = {} must lie in (0, 1/2)",
                format_rational(p)
            )));
        }
        Ok(p)
    }

    fn need_list_size(&self) -> Result<u64> {
        match self.list_size {
            Some(l) if l >= 1 => Ok(l),
            Some(_) => Err(Error::domain("list size L must be at least 1")),
            None => Err(Error::domain("missing parameter L")),
        }
    }

    fn need_lambda(&self, p: &ExactRational) -> Result<&ExactRational> {
        let lambda = self
            .lambda
            .as_ref()
            .ok_or_else(|| Error::domain("missing parameter lambda"))?;
        if lambda <= p || *lambda > ratio(1, 2) {
            return Err(Error::domain(format!(
                "lambda = {} must lie in (p, 1/2]",
                format_rational(lambda)
            )));
        }
        Ok(lambda)
    }

    /// Column values in the fixed CSV order `p,L,lambda,gamma,q,eps,z,n`.
    pub fn csv_fields(&self) -> Vec<String> {
        let rat = |v: &Option<ExactRational>| v.as_ref().map(format_rational).unwrap_or_default();
        let int = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            rat(&self.p),
            int(self.list_size),
            rat(&self.lambda),
            rat(&self.gamma),
            int(self.q.map(u64::from)),
            rat(&self.eps),
            rat(&self.z),
            int(self.n),
        ]
    }
}

/// Which arithmetic decided a report's verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    F64,
    HighPrec,
}

/// Outcome of evaluating one bound or one inequality at one parameter point.
///
/// The claim being checked is always `lhs <= rhs`; `margin = rhs - lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub bound_id: String,
    pub inputs: BoundParams,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub precision: Precision,
    /// Named auxiliary quantities (derived parameters, size caps, rates).
    pub aux: Vec<(&'static str, f64)>,
    /// Exact value, for reports that have one.
    pub exact: Option<ExactRational>,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "fact_id,p,L,lambda,gamma,q,eps,z,n,lhs,rhs,margin,satisfied";

    pub fn aux(&self, name: &str) -> Option<f64> {
        self.aux.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }

    pub fn csv_row(&self) -> String {
        let mut fields = vec![self.bound_id.clone()];
        fields.extend(self.inputs.csv_fields());
        fields.push(format!("{:e}", self.lhs));
        fields.push(format!("{:e}", self.rhs));
        fields.push(format!("{:e}", self.margin));
        fields.push(self.satisfied.to_string());
        fields.join(",")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs={:.10} rhs={:.10} margin={:.3e} {}",
            self.bound_id,
            self.lhs,
            self.rhs,
            self.margin,
            if self.satisfied { "ok" } else { "VIOLATED" }
        )?;
        for (k, v) in &self.aux {
            write!(f, " {k}={v:.10}")?;
        }
        Ok(())
    }
}

/// A comparison `lhs <= rhs` that can be evaluated in any [`Real`].
pub(crate) trait Sides {
    fn sides<R: Real>(&self) -> (R, R);
}

pub(crate) struct Verdict {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub precision: Precision,
}

/// Evaluates in `f64`, falling back to high precision near the boundary.
pub(crate) fn judge<S: Sides>(s: &S) -> Verdict {
    let (lhs, rhs) = s.sides::<f64>();
    let margin = rhs - lhs;
    judge_from(s, lhs, rhs, margin)
}

pub(crate) fn judge_from<S: Sides>(s: &S, lhs: f64, rhs: f64, margin: f64) -> Verdict {
    if margin.is_finite() && margin.abs() >= FALLBACK_WINDOW {
        return Verdict {
            lhs,
            rhs,
            margin,
            satisfied: margin >= -F64_TOLERANCE,
            precision: Precision::F64,
        };
    }
    let (l, r) = s.sides::<HighPrec>();
    let m = (r.clone() - l.clone()).to_f64();
    Verdict {
        lhs: l.to_f64(),
        rhs: r.to_f64(),
        margin: m,
        satisfied: m >= -HIGHPREC_TOLERANCE,
        precision: Precision::HighPrec,
    }
}

/// Names of the closed-form bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundId {
    /// Random-coding rate `1 - h(p) - 1/L - eps` for average-radius codes.
    CapacityMinusInverseL,
    /// Rate cap for weight-constrained average-radius codes at the optimized weight.
    AverageRadiusUpper,
    /// Size cap `2L^2/p` for binary codes with weight `p + p^L/2`.
    BinaryZeroRate,
    /// Rate cap `1 - h(p) - (1-2p) p^L / 4` for binary list-decodable codes.
    BinaryRateUpper,
    /// Size cap `2L^2/lambda` for q-ary codes with weight `p + p^L/(2L)`.
    QaryZeroRate,
    /// Parameters of the biased random construction.
    BiasedCodeParams,
    /// Two-sided rate interval for weight-constrained codes given the general gap.
    WeightedRateInterval,
}

impl BoundId {
    pub const ALL: [BoundId; 7] = [
        BoundId::CapacityMinusInverseL,
        BoundId::AverageRadiusUpper,
        BoundId::BinaryZeroRate,
        BoundId::BinaryRateUpper,
        BoundId::QaryZeroRate,
        BoundId::BiasedCodeParams,
        BoundId::WeightedRateInterval,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::CapacityMinusInverseL => "thm10_lower",
            BoundId::AverageRadiusUpper => "thm11_upper",
            BoundId::BinaryZeroRate => "thm15_zero_rate",
            BoundId::BinaryRateUpper => "thm15_rate",
            BoundId::QaryZeroRate => "thm16_zero_rate",
            BoundId::BiasedCodeParams => "thm18_params",
            BoundId::WeightedRateInterval => "lemma19_interval",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str() == name)
            .ok_or_else(|| Error::parse(format!("unknown bound id {name:?}")))
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn h<R: Real>(z: &R) -> R {
    numerics::binary_entropy(z)
}

fn r<R: Real>(v: &ExactRational) -> R {
    R::from_rational(v)
}

struct CapacityGap {
    p: ExactRational,
    l: u64,
    eps: ExactRational,
}

impl Sides for CapacityGap {
    // lhs: achievable rate, rhs: capacity 1 - h(p).
    fn sides<R: Real>(&self) -> (R, R) {
        let cap = R::int(1) - h(&r::<R>(&self.p));
        let rate = cap.clone() - R::from_ratio(1, self.l as i64) - r(&self.eps);
        (rate, cap)
    }
}

/// The constant `a_p = p^4 (1-2p)^2 / 48` in the `a_p / L^2` gap.
pub fn avg_radius_gap_constant(p: &ExactRational) -> ExactRational {
    let one_minus = ExactRational::one() - p * ratio(2, 1);
    p * p * p * p * &one_minus * &one_minus / ratio(48, 1)
}

/// The weight `p + p^3 (1-2p)^2 / (12 L)` at which the average-radius cap is taken.
pub fn avg_radius_weight(p: &ExactRational, l: u64) -> ExactRational {
    let one_minus = ExactRational::one() - p * ratio(2, 1);
    p + p * p * p * &one_minus * &one_minus / ratio(12 * l as i64, 1)
}

struct AverageRadiusCap {
    p: ExactRational,
    lambda: ExactRational,
    gap: ExactRational,
}

impl Sides for AverageRadiusCap {
    // lhs: h(lambda) - h(p) - a_p/L^2, rhs: the list-decoding cap h(lambda) - h(p).
    fn sides<R: Real>(&self) -> (R, R) {
        let base = h(&r::<R>(&self.lambda)) - h(&r::<R>(&self.p));
        (base.clone() - r(&self.gap), base)
    }
}

struct BinaryRateCap {
    p: ExactRational,
    l: u64,
}

impl Sides for BinaryRateCap {
    // lhs: 1 - h(p + p^L/2), rhs: 1 - h(p) - (1-2p) p^L / 4.
    fn sides<R: Real>(&self) -> (R, R) {
        let p: R = r(&self.p);
        let pl = p.powi(self.l as u32);
        let lambda = p.clone() + pl.clone() * R::from_ratio(1, 2);
        let lhs = R::int(1) - h(&lambda);
        let rhs = R::int(1) - h(&p) - (R::int(1) - R::int(2) * p.clone()) * pl * R::from_ratio(1, 4);
        (lhs, rhs)
    }
}

struct RateInterval {
    p: ExactRational,
    lambda: ExactRational,
    gamma: ExactRational,
}

impl Sides for RateInterval {
    // lhs: h(lambda) - h(p) - gamma, rhs: h(lambda) - h(p) - alpha2 gamma.
    fn sides<R: Real>(&self) -> (R, R) {
        let base = h(&r::<R>(&self.lambda)) - h(&r::<R>(&self.p));
        let a2 = alpha2(&self.p, &self.lambda);
        (base.clone() - r(&self.gamma), base - r::<R>(&(a2 * &self.gamma)))
    }
}

/// Quantities of the biased random construction for given `p` and `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasedParams {
    /// `b = (1/2 - p)^2 / 2`.
    pub b: f64,
    /// `eps = e^{-bL}`.
    pub eps: f64,
    /// Per-coordinate bias `p + 4 eps`.
    pub bias: f64,
    /// Weight bound `p + 5 eps`.
    pub weight_bound: f64,
    /// Rate `min{e^{-2bL}, e^{-bL}/(6L)}`.
    pub rate: f64,
    /// Smallest admissible list size `(1/2b) log2(32/b)`.
    pub min_list_size: f64,
    /// Whether `1/2 - bias >= (1/2 - p)/2`.
    pub side_condition: bool,
}

/// Evaluates the biased-construction quantities without enforcing the list-size threshold.
pub fn biased_params(p: f64, l: u64) -> BiasedParams {
    let b = 0.5 * (0.5 - p) * (0.5 - p);
    let eps = (-b * l as f64).exp();
    let bias = p + 4.0 * eps;
    BiasedParams {
        b,
        eps,
        bias,
        weight_bound: p + 5.0 * eps,
        rate: (-2.0 * b * l as f64).exp().min(eps / (6.0 * l as f64)),
        min_list_size: (32.0 / b).log2() / (2.0 * b),
        side_condition: 0.5 - bias >= 0.5 * (0.5 - p),
    }
}

/// `alpha = (lambda - p) / (1 - 2p)`, the center density of the warm-up attack.
pub fn alpha(p: &ExactRational, lambda: &ExactRational) -> ExactRational {
    (lambda - p) / (ExactRational::one() - p * ratio(2, 1))
}

/// `alpha2 = (lambda - p) / (1/2 - p)`, the restriction density.
pub fn alpha2(p: &ExactRational, lambda: &ExactRational) -> ExactRational {
    (lambda - p) / (ratio(1, 2) - p)
}

/// `beta = (lambda - p) / (1 - 2p + 2p/L)`, the sample density of the special-codeword attack.
pub fn beta(p: &ExactRational, lambda: &ExactRational, l: u64) -> ExactRational {
    let two_p = p * ratio(2, 1);
    (lambda - p) / (ExactRational::one() - &two_p + two_p / ratio(l as i64, 1))
}

/// Checks `lambda - alpha (1 - 2p) = p` exactly.
pub fn alpha_identity_holds(p: &ExactRational, lambda: &ExactRational) -> bool {
    let a = alpha(p, lambda);
    lambda - a * (ExactRational::one() - p * ratio(2, 1)) == *p
}

/// Checks `lambda - alpha2/2 = p (1 - alpha2)` exactly.
pub fn alpha2_identity_holds(p: &ExactRational, lambda: &ExactRational) -> bool {
    let a = alpha2(p, lambda);
    lambda - &a * ratio(1, 2) == p * (ExactRational::one() - a)
}

fn report(id: BoundId, inputs: BoundParams, v: Verdict, aux: Vec<(&'static str, f64)>) -> BoundReport {
    BoundReport {
        bound_id: id.as_str().to_string(),
        inputs,
        lhs: v.lhs,
        rhs: v.rhs,
        margin: v.margin,
        satisfied: v.satisfied,
        precision: v.precision,
        aux,
        exact: None,
    }
}

fn exact_report(
    id: BoundId,
    inputs: BoundParams,
    lhs: &ExactRational,
    rhs: &ExactRational,
    aux: Vec<(&'static str, f64)>,
) -> BoundReport {
    let margin = rhs - lhs;
    BoundReport {
        bound_id: id.as_str().to_string(),
        inputs,
        lhs: numerics::rational_to_f64(lhs),
        rhs: numerics::rational_to_f64(rhs),
        margin: numerics::rational_to_f64(&margin),
        satisfied: !margin.is_negative(),
        precision: Precision::HighPrec,
        aux,
        exact: Some(margin),
    }
}

/// Evaluates one closed-form bound.
///
/// Side conventions (the report always claims `lhs <= rhs`):
/// - `thm10_lower`: achievable rate vs capacity `1 - h(p)`; aux `rate`.
/// - `thm11_upper`: rate cap `h(lambda*) - h(p) - a_p/L^2` vs `h(lambda*) - h(p)`;
///   aux `lambda`, `a_p`, `rate`, `general_rate` (the cap `1 - h(p) - a_p/L^2`).
/// - `thm15_zero_rate`, `thm16_zero_rate`: `p` vs the weight `lambda` (exact); aux
///   `lambda`, `size_cap`.
/// - `thm15_rate`: `1 - h(p + p^L/2)` vs `1 - h(p) - (1-2p)p^L/4`; aux `rate`.
/// - `thm18_params`: `(1/2 - p)/2` vs `1/2 - bias`, the construction's side condition;
///   aux `b`, `eps`, `bias`, `lambda`, `rate`, `min_L`.
/// - `lemma19_interval`: lower end vs upper end of the rate interval; aux `alpha2`.
pub fn rate_bound(id: BoundId, params: &BoundParams) -> Result<BoundReport> {
    let p = params.need_p()?.clone();
    match id {
        BoundId::CapacityMinusInverseL => {
            let l = params.need_list_size()?;
            let eps = params.eps.clone().unwrap_or_else(ExactRational::zero);
            if eps.is_negative() {
                return Err(Error::domain("eps must be nonnegative"));
            }
            let v = judge(&CapacityGap { p, l, eps });
            let rate = v.lhs;
            Ok(report(id, params.clone(), v, vec![("rate", rate)]))
        }
        BoundId::AverageRadiusUpper => {
            let l = params.need_list_size()?;
            let limit = numerics::rational_to_f64(&(&p * ratio(2, 1) / (ExactRational::one() - &p * ratio(2, 1))));
            if (l as f64) <= limit {
                return Err(Error::domain(format!(
                    "list size L = {l} must exceed 2p/(1-2p) = {limit}"
                )));
            }
            let lambda = avg_radius_weight(&p, l);
            let a_p = avg_radius_gap_constant(&p);
            let gap = &a_p / ratio((l * l) as i64, 1);
            let v = judge(&AverageRadiusCap {
                p: p.clone(),
                lambda: lambda.clone(),
                gap: gap.clone(),
            });
            let rate = v.lhs;
            let general = 1.0 - h(&numerics::rational_to_f64(&p)) - numerics::rational_to_f64(&gap);
            let aux = vec![
                ("lambda", numerics::rational_to_f64(&lambda)),
                ("a_p", numerics::rational_to_f64(&a_p)),
                ("rate", rate),
                ("general_rate", general),
            ];
            let mut inputs = params.clone();
            inputs.lambda = Some(lambda);
            Ok(report(id, inputs, v, aux))
        }
        BoundId::BinaryZeroRate | BoundId::QaryZeroRate => {
            let l = params.need_list_size()?;
            let pl = num_traits::pow(p.clone(), l as usize);
            let (lambda, cap) = if id == BoundId::BinaryZeroRate {
                let lambda = &p + pl * ratio(1, 2);
                let cap = ratio(2 * (l * l) as i64, 1) / &p;
                (lambda, cap)
            } else {
                let lambda = &p + pl / ratio(2 * l as i64, 1);
                let cap = ratio(2 * (l * l) as i64, 1) / &lambda;
                (lambda, cap)
            };
            let aux = vec![
                ("lambda", numerics::rational_to_f64(&lambda)),
                ("size_cap", numerics::rational_to_f64(&cap)),
            ];
            let mut inputs = params.clone();
            inputs.lambda = Some(lambda.clone());
            Ok(exact_report(id, inputs, &p, &lambda, aux))
        }
        BoundId::BinaryRateUpper => {
            let l = params.need_list_size()?;
            let v = judge(&BinaryRateCap { p, l });
            let rate = v.rhs;
            Ok(report(id, params.clone(), v, vec![("rate", rate)]))
        }
        BoundId::BiasedCodeParams => {
            let l = params.need_list_size()?;
            let bp = biased_params(numerics::rational_to_f64(&p), l);
            if (l as f64) < bp.min_list_size {
                return Err(Error::domain(format!(
                    "list size L = {l} is below the construction threshold (1/2b) log2(32/b) = {:.3}",
                    bp.min_list_size
                )));
            }
            let lhs = 0.5 * (0.5 - numerics::rational_to_f64(&p));
            let rhs = 0.5 - bp.bias;
            let margin = rhs - lhs;
            let aux = vec![
                ("b", bp.b),
                ("eps", bp.eps),
                ("bias", bp.bias),
                ("lambda", bp.weight_bound),
                ("rate", bp.rate),
                ("min_L", bp.min_list_size),
            ];
            let v = Verdict {
                lhs,
                rhs,
                margin,
                satisfied: bp.side_condition,
                precision: Precision::F64,
            };
            Ok(report(id, params.clone(), v, aux))
        }
        BoundId::WeightedRateInterval => {
            let lambda = params.need_lambda(&p)?.clone();
            let gamma = params
                .gamma
                .clone()
                .ok_or_else(|| Error::domain("missing parameter gamma"))?;
            if !gamma.is_positive() {
                return Err(Error::domain("gamma must be positive"));
            }
            let a2 = alpha2(&p, &lambda);
            let v = judge(&RateInterval { p, lambda, gamma });
            Ok(report(id, params.clone(), v, vec![("alpha2", numerics::rational_to_f64(&a2))]))
        }
    }
}

/// `Var / E^2`, capped at 1: an upper bound on `Pr[W = 0]` for a nonnegative count `W`.
pub fn chebyshev_failure_bound(mean: &ExactRational, variance: &ExactRational) -> Result<ExactRational> {
    if !mean.is_positive() {
        return Err(Error::domain("mean must be positive for the second-moment bound"));
    }
    if variance.is_negative() {
        return Err(Error::domain("variance must be nonnegative"));
    }
    let b = variance / (mean * mean);
    Ok(if b > ExactRational::one() {
        ExactRational::one()
    } else {
        b
    })
}
