//! Exact witness counts and their expectations.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::field::{is_prime, Echelon};
use super::{CodeKind, CodeMap, RandomCodeSpec};
use crate::checkers::Mode;
use crate::error::{Error, Result};
use crate::hamming::{combinations, ErasedWord, Word};
use crate::numerics::{ball_size, binomial, ceil_int, floor_int, ratio, ExactRational};

/// Budget on the work of one exact count: `q^n * q^k` for errors, `C(n, s) * q^k` for
/// erasures, and the number of search nodes for independent lists.
pub const COUNT_BUDGET: u128 = 1 << 26;

/// Which ordered L-tuples of messages are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ListKind {
    OrderedDistinct,
    LinearlyIndependent,
}

impl ListKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ListKind::OrderedDistinct => "ordered-distinct",
            ListKind::LinearlyIndependent => "linearly-independent",
        }
    }

    /// The kind a code of the given kind is counted with by default.
    pub fn default_for(kind: CodeKind) -> Self {
        match kind {
            CodeKind::General => ListKind::OrderedDistinct,
            CodeKind::Linear => ListKind::LinearlyIndependent,
        }
    }
}

/// The number W of (center, ordered message tuple) pairs whose images all lie in the
/// center's ball (errors) or agree with the center's revealed symbols (erasures).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStats {
    pub w: BigUint,
    pub mode: Mode,
    pub list_size: usize,
    /// Radius `floor(pn)` for errors, revealed-set size `ceil((1-p)n)` for erasures.
    pub parameter: usize,
    pub list_kind: ListKind,
}

fn radius(p: &ExactRational, n: usize) -> usize {
    floor_int(&(p * ratio(n as i64, 1))).try_into().expect("p in [0, 1]")
}

fn support_size(p: &ExactRational, n: usize) -> usize {
    ceil_int(&((ExactRational::one() - p) * ratio(n as i64, 1)))
        .try_into()
        .expect("p in [0, 1]")
}

fn check_p(p: &ExactRational) -> Result<()> {
    if *p < ExactRational::zero() || *p > ExactRational::one() {
        return Err(Error::domain("p must lie in [0, 1]"));
    }
    Ok(())
}

fn falling(m: usize, l: usize) -> BigUint {
    if m < l {
        return BigUint::zero();
    }
    (0..l).fold(BigUint::one(), |acc, i| acc * (m - i))
}

/// Ordered L-tuples of linearly independent vectors drawn from `vectors`.
fn ordered_independent(q: u32, vectors: &[Vec<u32>], l: usize, nodes: &mut u128) -> Result<BigUint> {
    fn go(span: &Echelon, vectors: &[Vec<u32>], left: usize, nodes: &mut u128) -> Result<BigUint> {
        if left == 0 {
            return Ok(BigUint::one());
        }
        *nodes += 1;
        if *nodes > COUNT_BUDGET {
            return Err(Error::over_budget("independent list search", *nodes, COUNT_BUDGET));
        }
        let mut total = BigUint::zero();
        for v in vectors {
            let mut next = span.clone();
            if next.insert(v) {
                total += go(&next, vectors, left - 1, nodes)?;
            }
        }
        Ok(total)
    }
    if vectors.len() < l {
        return Ok(BigUint::zero());
    }
    go(&Echelon::new(q), vectors, l, nodes)
}

fn tuples(map: &CodeMap, members: &[usize], l: usize, kind: ListKind) -> Result<BigUint> {
    match kind {
        ListKind::OrderedDistinct => Ok(falling(members.len(), l)),
        ListKind::LinearlyIndependent => {
            let vectors: Vec<Vec<u32>> = members.iter().map(|&r| map.message(r).symbols()).collect();
            let mut nodes = 0;
            ordered_independent(map.q(), &vectors, l, &mut nodes)
        }
    }
}

/// Counts W with the list kind matching the code's kind.
pub fn count_witnesses(map: &CodeMap, mode: Mode, p: &ExactRational, l: usize) -> Result<WitnessStats> {
    count_witnesses_with(map, mode, p, l, ListKind::default_for(map.kind()))
}

pub fn count_witnesses_with(
    map: &CodeMap,
    mode: Mode,
    p: &ExactRational,
    l: usize,
    list_kind: ListKind,
) -> Result<WitnessStats> {
    check_p(p)?;
    if l == 0 {
        return Err(Error::domain("list size must be positive"));
    }
    if list_kind == ListKind::LinearlyIndependent && !is_prime(map.q()) {
        return Err(Error::domain("independence needs a prime field"));
    }
    let (q, n) = (map.q(), map.n());
    let messages = map.images().len() as u128;
    let (w, parameter) = match mode {
        Mode::MaxRadius => {
            let e = radius(p, n);
            let space = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            let work = space.saturating_mul(messages);
            if work > COUNT_BUDGET {
                return Err(Error::over_budget("witness count over centers", work, COUNT_BUDGET));
            }
            let counts = (0..space as u64)
                .into_par_iter()
                .map(|a| {
                    let center = Word::from_rank(q, n, a as u128).expect("rank in range");
                    let members: Vec<usize> = (0..map.images().len())
                        .filter(|&r| center.dist(&map.images()[r]) <= e)
                        .collect();
                    tuples(map, &members, l, list_kind)
                })
                .collect::<Result<Vec<_>>>()?;
            (counts.into_iter().sum(), e)
        }
        Mode::Erasure => {
            let s = support_size(p, n);
            let work = binomial(n as i64, s as i64) * BigInt::from(messages);
            if work > BigInt::from(COUNT_BUDGET) {
                return Err(Error::over_budget(
                    "witness count over revealed sets",
                    work.try_into().unwrap_or(u128::MAX),
                    COUNT_BUDGET,
                ));
            }
            let supports: Vec<Vec<usize>> = combinations(n, s).collect();
            let counts = supports
                .par_iter()
                .map(|support| {
                    let mut buckets: HashMap<Word, Vec<usize>> = HashMap::new();
                    for (r, img) in map.images().iter().enumerate() {
                        buckets.entry(img.restrict(support).expect("in range")).or_default().push(r);
                    }
                    let mut total = BigUint::zero();
                    for members in buckets.values() {
                        total += tuples(map, members, l, list_kind)?;
                    }
                    Ok(total)
                })
                .collect::<Result<Vec<_>>>()?;
            (counts.into_iter().sum(), s)
        }
        Mode::AvgRadius => return Err(Error::domain("witness counts are defined for max_radius and erasure")),
    };
    Ok(WitnessStats {
        w,
        mode,
        list_size: l,
        parameter,
        list_kind,
    })
}

fn pow(q: u32, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// Exact E W over the code distribution. The count of message tuples is
/// `q^k (q^k - 1) ... (q^k - L + 1)` for general codes and
/// `(q^k - 1)(q^k - q) ... (q^k - q^{L-1})` for linear ones; the images of such tuples
/// are independent and uniform, so each (center, tuple) pair contributes `mu^L` (errors,
/// `mu` the ball fraction) or `q^{-sL}` (erasures, s revealed symbols).
pub fn exact_expected_w(spec: &RandomCodeSpec, mode: Mode, p: &ExactRational, l: usize) -> Result<ExactRational> {
    check_p(p)?;
    let (q, n) = (spec.q, spec.n);
    let qk = pow(q, spec.k);
    let tuples: BigInt = match spec.kind {
        CodeKind::General => (0..l).map(|i| &qk - BigInt::from(i)).fold(BigInt::one(), |a, b| a * b.max(BigInt::zero())),
        CodeKind::Linear => (0..l).map(|i| &qk - pow(q, i)).fold(BigInt::one(), |a, b| a * b.max(BigInt::zero())),
    };
    let tuples = ExactRational::from_integer(tuples);
    match mode {
        Mode::MaxRadius => {
            let e = radius(p, n);
            let space = pow(q, n);
            let ball = BigInt::from(ball_size(q, n as u64, e as u64));
            let mut acc = tuples * ExactRational::from_integer(space.clone());
            for _ in 0..l {
                acc *= ExactRational::new(ball.clone(), space.clone());
            }
            Ok(acc)
        }
        Mode::Erasure => {
            let s = support_size(p, n);
            let centers = binomial(n as i64, s as i64) * pow(q, s);
            Ok(tuples * ExactRational::new(centers, pow(q, s * l)))
        }
        Mode::AvgRadius => Err(Error::domain("witness counts are defined for max_radius and erasure")),
    }
}

/// Result of closing a list under affine combinations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineClosure {
    /// Distinct affine combinations agreeing with the erased word.
    pub agreeing: usize,
    /// Linear independence of the inputs, when asked for.
    pub independent: Option<bool>,
}

/// Every combination `sum theta_i c_i` with `sum theta_i = 1` over F_q agrees with `a`
/// wherever all the `c_i` do; for independent inputs the combinations are distinct and
/// there are exactly `q^{L-1}` of them.
pub fn affine_closure(codewords: &[Word], a: &ErasedWord, check_independent: bool) -> Result<AffineClosure> {
    let first = codewords.first().ok_or_else(|| Error::domain("need at least one codeword"))?;
    let q = first.q();
    if !is_prime(q) {
        return Err(Error::domain(format!("affine combinations need a prime field, q = {q}")));
    }
    for c in codewords {
        first.check_shape(c)?;
        if !a.agrees(c)? {
            return Err(Error::domain(format!("{c} does not agree with {}", a.to_text())));
        }
    }
    let l = codewords.len();
    let count = (q as u128)
        .checked_pow(l as u32 - 1)
        .filter(|&c| c <= COUNT_BUDGET)
        .ok_or_else(|| Error::over_budget("affine combinations", u128::MAX, COUNT_BUDGET))?;
    let mut seen = HashSet::new();
    for r in 0..count {
        let theta = Word::from_rank(q, l - 1, r)?;
        let mut sum_theta = 0;
        let mut x = Word::zero_unchecked(q, first.len());
        for (i, c) in codewords[..l - 1].iter().enumerate() {
            x.add_scaled_assign(c, theta.get(i));
            sum_theta = (sum_theta + theta.get(i)) % q;
        }
        x.add_scaled_assign(&codewords[l - 1], (1 + q - sum_theta) % q);
        if a.agrees(&x)? {
            seen.insert(x);
        }
    }
    Ok(AffineClosure {
        agreeing: seen.len(),
        independent: check_independent.then(|| super::field::rank_mod_q(codewords) == l),
    })
}

/// An erasure pattern and L linearly independent codewords agreeing with it, with the
/// number of distinct codewords agreeing with the pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentErasureList {
    pub center: ErasedWord,
    pub list: Vec<Word>,
    pub agreeing: usize,
}

/// The first revealed set and bucket (in lexicographic order) holding L independent images.
pub fn independent_erasure_list(map: &CodeMap, p: &ExactRational, l: usize) -> Result<Option<IndependentErasureList>> {
    check_p(p)?;
    if !is_prime(map.q()) {
        return Err(Error::domain("independence needs a prime field"));
    }
    let n = map.n();
    let s = support_size(p, n);
    for support in combinations(n, s) {
        let mut buckets: HashMap<Word, Vec<&Word>> = HashMap::new();
        let mut order = Vec::new();
        for img in map.images() {
            let key = img.restrict(&support)?;
            let b = buckets.entry(key.clone()).or_default();
            if b.is_empty() {
                order.push(key);
            }
            if !b.contains(&img) {
                b.push(img);
            }
        }
        for key in order {
            let bucket = &buckets[&key];
            let mut span = Echelon::new(map.q());
            let mut list = Vec::new();
            for w in bucket {
                if list.len() < l && span.insert(&w.symbols()) {
                    list.push((*w).clone());
                }
            }
            if list.len() == l {
                return Ok(Some(IndependentErasureList {
                    center: ErasedWord::from_support(&list[0], &support)?,
                    list,
                    agreeing: bucket.len(),
                }));
            }
        }
    }
    Ok(None)
}
