//! Subcode extraction, intersection search and the biased random code.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use super::{check_p, scaled};
use crate::bounds::{alpha2, biased_params, BiasedParams};
use crate::checkers::{check_list_decodable, DecodabilityQuery, Mode};
use crate::error::{Error, Result};
use crate::hamming::{combinations, Code, Word};
use crate::numerics::{binomial, ceil_int, format_rational, generalized_binomial, ratio, rational_to_f64, ExactRational};

/// Budget on `q^n * |C|` distance evaluations for the exhaustive shell-center search.
pub const SHELL_BUDGET: u128 = 1 << 30;
/// Largest number of words the biased construction will draw.
pub const BIASED_SAMPLE_BUDGET: u128 = 1 << 20;

fn big(v: usize) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

/// Expected size of the common support of a uniform L-subset of the code, and the
/// convexity lower bound `n g(lambda M) / C(M, L)` with `g(z) = C(max{z, L-1}, L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonSupport {
    pub exact: ExactRational,
    pub lower_bound: ExactRational,
}

pub fn expected_common_support(code: &Code, l: usize) -> Result<CommonSupport> {
    code.require_binary()?;
    let w = code.require_weight_tag()?;
    let m = code.len();
    if l == 0 || m < l {
        return Err(Error::domain(format!("need 1 <= L <= |C|, got L = {l}, |C| = {m}")));
    }
    let n = code.n();
    let denom = ExactRational::from_integer(binomial(m as i64, l as i64));
    let mut num = BigInt::zero();
    for i in 0..n {
        let mi = code.words().iter().filter(|c| c.get(i) == 1).count();
        num += binomial(mi as i64, l as i64);
    }
    let exact = ExactRational::from_integer(num) / &denom;
    // The column counts average to lambda M = w M / n.
    let z = ratio((w * m) as i64, n as i64).max(big(l - 1));
    let lower_bound = big(n) * generalized_binomial(&z, l as u64) / denom;
    Ok(CommonSupport { exact, lower_bound })
}

/// `E delta` for two independent uniform codewords at distance `2 delta n`, computed from
/// the column frequencies as `(1/n) sum_j f_j (1 - f_j)`, together with `lambda (1 - lambda)`.
pub fn expected_half_distance(code: &Code) -> Result<(ExactRational, ExactRational)> {
    code.require_binary()?;
    let w = code.require_weight_tag()?;
    if code.is_empty() {
        return Err(Error::domain("code is empty"));
    }
    let (n, m) = (code.n(), code.len());
    let mut acc = ExactRational::zero();
    for j in 0..n {
        let mj = code.words().iter().filter(|c| c.get(j) == 1).count();
        let f = ratio(mj as i64, m as i64);
        acc += &f * (ExactRational::one() - &f);
    }
    let lambda = ratio(w as i64, n as i64);
    Ok((acc / big(n), &lambda * (ExactRational::one() - &lambda)))
}

/// Outcome of looking for L sets with a large common intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionSearch {
    /// `ceil(n lambda^L / 2)`.
    pub threshold: usize,
    /// Indices of the chosen sets and their intersection.
    pub found: Option<(Vec<usize>, Vec<usize>)>,
    /// False when the combination count exceeded the budget and only the greedy pass ran.
    pub exhaustive: bool,
    /// Whether the family is large enough (`|A| >= 2L^2/lambda`) for a hit to be certain.
    pub guaranteed: bool,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Searches a family of subsets of `{0, ..., n-1}`, each of size at least `lambda n`, for L
/// members meeting in at least `n lambda^L / 2` points. All L-subsets are tried when there
/// are at most `budget` of them; otherwise a greedy pass grows a family from each start set
/// by the member keeping the intersection largest.
pub fn intersecting_family_search(
    n: usize,
    sets: &[Vec<usize>],
    l: usize,
    lambda: &ExactRational,
    budget: u128,
) -> Result<IntersectionSearch> {
    if l == 0 || l > sets.len() {
        return Err(Error::domain(format!("need 1 <= L <= {}, got {l}", sets.len())));
    }
    let min_size = lambda * big(n);
    let mut family = Vec::with_capacity(sets.len());
    for s in sets {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.last().is_some_and(|&i| i >= n) {
            return Err(Error::shape(format!("set element out of range for n = {n}")));
        }
        if big(s.len()) < min_size {
            return Err(Error::domain(format!(
                "set of size {} is below lambda n = {}",
                s.len(),
                format_rational(&min_size)
            )));
        }
        family.push(s);
    }
    let mut lam_pow = ExactRational::one();
    for _ in 0..l {
        lam_pow *= lambda;
    }
    let threshold: usize = ceil_int(&(big(n) * lam_pow / big(2))).try_into().expect("at most n");
    let guaranteed = big(sets.len()) * lambda >= big(2 * l * l);
    let count = binomial(sets.len() as i64, l as i64);
    let exhaustive = count <= BigInt::from(budget);
    let found = if exhaustive {
        combinations(family.len(), l).find_map(|idx| {
            let common = idx[1..]
                .iter()
                .fold(family[idx[0]].clone(), |acc, &k| intersect(&acc, &family[k]));
            (common.len() >= threshold).then_some((idx, common))
        })
    } else {
        (0..family.len()).find_map(|start| {
            let mut idx = vec![start];
            let mut common = family[start].clone();
            while idx.len() < l {
                let (k, next) = (0..family.len())
                    .filter(|k| !idx.contains(k))
                    .map(|k| (k, intersect(&common, &family[k])))
                    .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(&a.0)))?;
                idx.push(k);
                common = next;
            }
            idx.sort_unstable();
            (common.len() >= threshold).then_some((idx, common))
        })
    };
    if exhaustive && guaranteed && found.is_none() {
        return Err(Error::Inconsistent(
            "a family this large must contain L sets with a large intersection".into(),
        ));
    }
    Ok(IntersectionSearch {
        threshold,
        found,
        exhaustive,
        guaranteed,
    })
}

/// A center x maximizing the number of codewords at distance exactly `lambda n`, and
/// those codewords translated by `-x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellSubcode {
    pub center: Word,
    /// Constant-weight code of the translated shell, tagged with weight `lambda n`.
    pub subcode: Code,
    pub exhaustive: bool,
    /// Average shell size `|C| C(n, w) (q-1)^w / q^n`; an exhaustive search meets it.
    pub averaging_bound: ExactRational,
    /// Set for q > 2, where the extraction is used without a written proof.
    pub qary_unproven: bool,
}

pub fn weight_shell_subcode<R: Rng + ?Sized>(
    code: &Code,
    lambda: &ExactRational,
    trials: usize,
    rng: &mut R,
) -> Result<ShellSubcode> {
    let (q, n) = (code.q(), code.n());
    let w = scaled(lambda, n, "lambda n")?;
    if w > n {
        return Err(Error::domain("lambda must be at most 1"));
    }
    if code.is_empty() {
        return Err(Error::domain("code is empty"));
    }
    let shell = |x: &Word| code.words().iter().filter(|c| x.dist(c) == w).count();
    let space = (q as u128).checked_pow(n as u32);
    let exhaustive = space.is_some_and(|s| s <= 1 << 24 && s * code.len() as u128 <= SHELL_BUDGET);
    let center = if exhaustive {
        let space = space.expect("checked above");
        let (rank, _) = (0..space)
            .into_par_iter()
            .map(|r| (r, shell(&Word::from_rank(q, n, r).expect("rank in range"))))
            .reduce(|| (0, 0), |a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a });
        Word::from_rank(q, n, rank)?
    } else {
        let mut best: Option<(usize, Word)> = None;
        for t in 0..trials.max(1) {
            // Alternate uniform centers with codewords moved to distance w.
            let x = if t % 2 == 0 {
                let syms: Vec<u32> = (0..n).map(|_| rng.random_range(0..q)).collect();
                Word::new(q, &syms)?
            } else {
                let mut x = code.words()[rng.random_range(0..code.len())].clone();
                for i in sample(rng, n, w).into_iter() {
                    let shift = rng.random_range(1..q);
                    x.set_unchecked(i, (x.get(i) + shift) % q);
                }
                x
            };
            let s = shell(&x);
            if best.as_ref().is_none_or(|(b, _)| s > *b) {
                best = Some((s, x));
            }
        }
        best.expect("at least one trial").1
    };
    let members = code
        .words()
        .iter()
        .filter(|c| center.dist(c) == w)
        .map(|c| c.sub_mod(&center))
        .collect::<Result<Vec<_>>>()?;
    let subcode = Code::constant_weight(q, n, members, w)?;
    let space_big = BigInt::from(q).pow(n as u32);
    let shell_size = binomial(n as i64, w as i64) * BigInt::from(q - 1).pow(w as u32);
    let averaging_bound = ExactRational::new(BigInt::from(code.len()) * shell_size, space_big);
    if exhaustive && big(subcode.len()) < averaging_bound {
        return Err(Error::Inconsistent("the best shell is smaller than the average shell".into()));
    }
    Ok(ShellSubcode {
        center,
        subcode,
        exhaustive,
        averaging_bound,
        qary_unproven: q > 2,
    })
}

/// The biased random code: words drawn i.i.d. with per-coordinate bias `p + 4 eps`, then
/// expurgated to the most populous weight.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasedSample {
    pub params: BiasedParams,
    /// The bias actually used, clamped to 1 when `p + 4 eps` exceeds it.
    pub bias_used: f64,
    /// Set when L is below the size the guarantee asks for.
    pub below_list_threshold: bool,
    pub drawn: usize,
    pub distinct: usize,
    /// The largest weight class, weight-tagged.
    pub code: Code,
    pub weight: usize,
    /// Whether `weight / n <= p + 5 eps`.
    pub within_weight_bound: bool,
    /// Verdict of the average-radius checker when it fit its budgets.
    pub avg_decodable: Option<bool>,
}

/// Number of words the construction draws: `ceil(2^{R n})`.
pub fn biased_sample_count(p: &ExactRational, l: usize, n: usize) -> Result<usize> {
    let params = biased_params(rational_to_f64(p), l as u64);
    let count = (params.rate * n as f64).exp2().ceil();
    if !count.is_finite() || count > BIASED_SAMPLE_BUDGET as f64 {
        return Err(Error::over_budget("biased code sampling", count.to_u128().unwrap_or(u128::MAX), BIASED_SAMPLE_BUDGET));
    }
    Ok(count as usize)
}

/// Draws `count` words (default `ceil(2^{Rn})`) and keeps the largest weight class.
pub fn biased_sample<R: Rng + ?Sized>(
    p: &ExactRational,
    l: usize,
    n: usize,
    count: Option<usize>,
    rng: &mut R,
) -> Result<BiasedSample> {
    check_p(p)?;
    if l == 0 || n == 0 {
        return Err(Error::domain("L and n must be positive"));
    }
    let params = biased_params(rational_to_f64(p), l as u64);
    let drawn = match count {
        Some(c) => c.max(1),
        None => biased_sample_count(p, l, n)?,
    };
    let bias_used = params.bias.min(1.0);
    let mut seen = HashMap::new();
    let mut by_weight: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    for _ in 0..drawn {
        let ones: Vec<usize> = (0..n).filter(|_| rng.random_bool(bias_used)).collect();
        let word = Word::indicator(n, &ones)?;
        if seen.insert(word.clone(), ()).is_none() {
            by_weight[ones.len()].push(word);
        }
    }
    let distinct = seen.len();
    // Ties go to the lighter class.
    let weight = (0..=n)
        .max_by(|&a, &b| by_weight[a].len().cmp(&by_weight[b].len()).then(b.cmp(&a)))
        .expect("n + 1 classes");
    if by_weight[weight].len() * (n + 1) < distinct {
        return Err(Error::Inconsistent("largest weight class below the pigeonhole size".into()));
    }
    let code = Code::constant_weight(2, n, std::mem::take(&mut by_weight[weight]), weight)?;
    let avg_decodable = if code.len() < l {
        Some(true)
    } else {
        let query = DecodabilityQuery::new(code.clone(), p.clone(), l, Mode::AvgRadius)?;
        match check_list_decodable(&query) {
            Ok(d) => Some(d.decodable),
            Err(Error::Resource { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(BiasedSample {
        within_weight_bound: (weight as f64) / (n as f64) <= params.weight_bound,
        below_list_threshold: (l as f64) < params.min_list_size,
        params,
        bias_used,
        drawn,
        distinct,
        code,
        weight,
        avg_decodable,
    })
}

/// The codewords heavy on a random coordinate set S of size `alpha2 n`, restricted to S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedSubcode {
    pub support: Vec<usize>,
    /// Indices into the original code of the kept codewords.
    pub members: Vec<usize>,
    /// Distinct restrictions, in order of first appearance.
    pub restriction: Code,
    /// How many kept codewords share each restriction.
    pub multiplicity: Vec<usize>,
    /// Cap `p (1 - alpha2) n` on the weight a kept codeword carries off S.
    pub outside_cap: usize,
}

/// Samples S with `|S| = alpha2 n`, `alpha2 = (lambda - p)/(1/2 - p)`, and keeps the
/// codewords with at least `alpha2 n / 2` ones on S. A center x' for the restriction
/// lifts to a center for the code with `d(x, c) = d(x', c|S) + wt(c off S)`.
pub fn restricted_subcode<R: Rng + ?Sized>(code: &Code, p: &ExactRational, rng: &mut R) -> Result<RestrictedSubcode> {
    code.require_binary()?;
    check_p(p)?;
    let w = code.require_weight_tag()?;
    let n = code.n();
    let lambda = ratio(w as i64, n as i64);
    let a2 = alpha2(p, &lambda);
    if a2 <= ExactRational::zero() || a2 > ExactRational::one() {
        return Err(Error::domain(format!(
            "alpha2 = {} must lie in (0, 1]",
            format_rational(&a2)
        )));
    }
    let size = scaled(&a2, n, "alpha2 n")?;
    let half = scaled(&(&a2 / big(2)), n, "alpha2 n / 2")?;
    let outside_cap = w.checked_sub(half).ok_or_else(|| Error::domain("alpha2 n / 2 exceeds the weight"))?;
    if big(outside_cap) != p * (ExactRational::one() - &a2) * big(n) {
        return Err(Error::Inconsistent("lambda - alpha2/2 differs from p (1 - alpha2)".into()));
    }
    let mut support = sample(rng, n, size).into_vec();
    support.sort_unstable();
    let mut members = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut distinct = Vec::new();
    let mut multiplicity = Vec::new();
    for (k, c) in code.words().iter().enumerate() {
        let on = c.weight_on(&support);
        if on < half {
            continue;
        }
        if w - on > outside_cap {
            return Err(Error::Inconsistent(format!("{c} carries too much weight off S")));
        }
        members.push(k);
        let r = c.restrict(&support)?;
        match index.get(&r) {
            Some(&j) => multiplicity[j] += 1,
            None => {
                index.insert(r.clone(), distinct.len());
                distinct.push(r);
                multiplicity.push(1);
            }
        }
    }
    Ok(RestrictedSubcode {
        restriction: Code::new(2, size, distinct)?,
        support,
        members,
        multiplicity,
        outside_cap,
    })
}

/// Pads a center on `support` with zeros to length n.
pub fn lift_center(x: &Word, support: &[usize], n: usize) -> Result<Word> {
    if x.len() != support.len() {
        return Err(Error::shape("center length differs from the support size"));
    }
    let mut out = Word::zero(x.q(), n)?;
    for (j, &i) in support.iter().enumerate() {
        out.set(i, x.get(j))?;
    }
    Ok(out)
}
