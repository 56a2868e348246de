//! Attack centers built from sampled coordinate sets.

use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;

use super::{check_p, scaled, AttackOutcome, AttackResult};
use crate::bounds::{alpha, beta};
use crate::error::{Error, Result};
use crate::hamming::{Code, ListTuple, Word};
use crate::numerics::{ceil_int, floor_int, format_rational, ratio, ExactRational};

fn sorted_sample<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut s = sample(rng, n, k).into_vec();
    s.sort_unstable();
    s
}

fn to_usize(v: num_bigint::BigInt) -> usize {
    v.try_into().expect("nonnegative and at most n")
}

/// Weight tag and `lambda = w/n` of a binary constant-weight code, with `lambda > p`.
fn binary_profile(code: &Code, p: &ExactRational) -> Result<(usize, ExactRational)> {
    code.require_binary()?;
    check_p(p)?;
    let w = code.require_weight_tag()?;
    let lambda = ratio(w as i64, code.n() as i64);
    if lambda <= *p {
        return Err(Error::domain(format!(
            "weight fraction {} must exceed p = {}",
            format_rational(&lambda),
            format_rational(p)
        )));
    }
    Ok((w, lambda))
}

/// Center at the indicator of a random set S of `alpha n` coordinates,
/// `alpha = (lambda - p)/(1 - 2p)`; the list is every codeword with at least
/// `(1 - p) alpha n` ones on S, and each lies within `pn` of the center.
pub fn warmup_center<R: Rng + ?Sized>(code: &Code, p: &ExactRational, rng: &mut R) -> Result<AttackOutcome> {
    let (_, lambda) = binary_profile(code, p)?;
    let a = alpha(p, &lambda);
    if a > ExactRational::one() {
        return Err(Error::domain(format!("alpha = {} exceeds 1", format_rational(&a))));
    }
    let an = scaled(&a, code.n(), "alpha n")?;
    let support = sorted_sample(rng, code.n(), an);
    warmup_with_support(code, p, &support)
}

pub(crate) fn warmup_with_support(code: &Code, p: &ExactRational, support: &[usize]) -> Result<AttackOutcome> {
    let (w, _) = binary_profile(code, p)?;
    let n = code.n();
    let an = support.len();
    let x = Word::indicator(n, support)?;
    let threshold = to_usize(ceil_int(&((ExactRational::one() - p) * ratio(an as i64, 1))));
    let mut list = Vec::new();
    for c in code.words() {
        let on = c.weight_on(support);
        if x.dist(c) != (an - on) + (w - on) {
            return Err(Error::Inconsistent(format!("distance split fails for {c}")));
        }
        if on >= threshold {
            list.push(c.clone());
        }
    }
    if list.is_empty() {
        return Ok(AttackOutcome::Shortfall { found: 0, needed: 1 });
    }
    // (lambda - alpha(1 - 2p)) n = pn exactly.
    let e = to_usize(floor_int(&(p * ratio(n as i64, 1))));
    let len = list.len();
    AttackResult::checked(x, ListTuple::new(list)?, e, e * len).map(AttackOutcome::Found)
}

/// Center at the indicator of `beta n` random coordinates inside the support of a random
/// codeword c*, `beta = (lambda - p)/(1 - 2p + 2p/L)`. The returned list is c* followed by
/// `L - 1` random codewords with at least `(1 - p) beta n` ones on the sample; when fewer
/// qualify, the shortfall is reported.
pub fn special_codeword_attack<R: Rng + ?Sized>(
    code: &Code,
    p: &ExactRational,
    l: usize,
    rng: &mut R,
) -> Result<AttackOutcome> {
    let (w, lambda) = binary_profile(code, p)?;
    if l == 0 {
        return Err(Error::domain("list size must be positive"));
    }
    let bn = scaled(&beta(p, &lambda, l as u64), code.n(), "beta n")?;
    if bn > w {
        return Err(Error::domain(format!("beta n = {bn} exceeds the weight {w}")));
    }
    let star = rng.random_range(0..code.len());
    let supp = code.words()[star].support();
    let support: Vec<usize> = {
        let mut s: Vec<usize> = sample(rng, w, bn).iter().map(|i| supp[i]).collect();
        s.sort_unstable();
        s
    };
    special_codeword_with(code, p, l, star, &support, rng)
}

pub(crate) fn special_codeword_with<R: Rng + ?Sized>(
    code: &Code,
    p: &ExactRational,
    l: usize,
    star: usize,
    support: &[usize],
    rng: &mut R,
) -> Result<AttackOutcome> {
    let (w, lambda) = binary_profile(code, p)?;
    let n = code.n();
    let bn = support.len();
    let x = Word::indicator(n, support)?;
    let threshold = to_usize(ceil_int(&((ExactRational::one() - p) * ratio(bn as i64, 1))));
    let others: Vec<usize> = (0..code.len())
        .filter(|&i| i != star && code.words()[i].weight_on(support) >= threshold)
        .collect();
    if others.len() + 1 < l {
        return Ok(AttackOutcome::Shortfall {
            found: others.len() + 1,
            needed: l,
        });
    }
    let cstar = &code.words()[star];
    if x.dist(cstar) != w - bn {
        return Err(Error::domain("the sample must lie inside the special codeword's support"));
    }
    let mut members = vec![cstar.clone()];
    let mut picked = sample(rng, others.len(), l - 1).into_vec();
    picked.sort_unstable();
    members.extend(picked.into_iter().map(|i| code.words()[others[i]].clone()));
    let per_word = to_usize(floor_int(
        &(&lambda * ratio(n as i64, 1) - ratio(bn as i64, 1) * (ExactRational::one() - p * ratio(2, 1))),
    ));
    let avg = (w - bn) + (l - 1) * per_word;
    AttackResult::checked(x, ListTuple::new(members)?, per_word.max(w - bn), avg).map(AttackOutcome::Found)
}

/// Center at the indicator of the common support of `L` random codewords; every member
/// then lies at distance exactly `w - |S|`.
pub fn common_support_center<R: Rng + ?Sized>(code: &Code, l: usize, rng: &mut R) -> Result<AttackResult> {
    code.require_binary()?;
    let w = code.require_weight_tag()?;
    if l == 0 || l > code.len() {
        return Err(Error::domain(format!("list size {l} must lie in 1..={}", code.len())));
    }
    let mut picked = sample(rng, code.len(), l).into_vec();
    picked.sort_unstable();
    let members: Vec<Word> = picked.into_iter().map(|i| code.words()[i].clone()).collect();
    let common: Vec<usize> = (0..code.n()).filter(|&i| members.iter().all(|c| c.get(i) == 1)).collect();
    let x = Word::indicator(code.n(), &common)?;
    let d = w - common.len();
    let r = AttackResult::checked(x, ListTuple::new(members)?, d, d * l)?;
    if r.achieved.sum_dist != d * l {
        return Err(Error::Inconsistent("common-support distances are not all equal".into()));
    }
    Ok(r)
}

/// Splits `support` into `L` consecutive parts whose sizes differ by at most one.
pub fn balanced_partition(support: &[usize], l: usize) -> Result<Vec<Vec<usize>>> {
    if l == 0 || support.len() < l {
        return Err(Error::domain(format!(
            "cannot split {} coordinates into {l} nonempty parts",
            support.len()
        )));
    }
    let (base, extra) = (support.len() / l, support.len() % l);
    let mut parts = Vec::with_capacity(l);
    let mut start = 0;
    for j in 0..l {
        let len = base + usize::from(j < extra);
        parts.push(support[start..start + len].to_vec());
        start += len;
    }
    Ok(parts)
}

/// q-ary center agreeing with the j-th word on the j-th part of the common support and
/// zero off it, so that `d(x, c_j) <= wt(c_j) - |S_j|`.
pub fn partitioned_support_center(words: &ListTuple, partition: &[Vec<usize>]) -> Result<AttackResult> {
    let members = words.members();
    let n = words.n();
    let l = members.len();
    let common: Vec<usize> = (0..n).filter(|&i| members.iter().all(|c| c.get(i) != 0)).collect();
    if common.len() < l {
        return Err(Error::domain(format!(
            "common support has {} coordinates, fewer than L = {l}",
            common.len()
        )));
    }
    if partition.len() != l {
        return Err(Error::domain(format!("partition has {} parts, expected {l}", partition.len())));
    }
    let mut covered: Vec<usize> = partition.iter().flatten().copied().collect();
    covered.sort_unstable();
    if partition.iter().any(Vec::is_empty) || covered != common {
        return Err(Error::domain(
            "partition parts must be nonempty, disjoint and cover the common support",
        ));
    }
    let mut x = Word::zero_unchecked(words.q(), n);
    for (part, c) in partition.iter().zip(members) {
        for &i in part {
            x.set_unchecked(i, c.get(i));
        }
    }
    let mut caps = Vec::with_capacity(l);
    for (part, c) in partition.iter().zip(members) {
        let cap = c.weight() - part.len();
        if x.dist(c) > cap {
            return Err(Error::Inconsistent(format!("member {c} lies beyond wt - |S_j| = {cap}")));
        }
        caps.push(cap);
    }
    let per_word = caps.iter().copied().max().unwrap_or(0);
    AttackResult::checked(x, words.clone(), per_word, caps.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::combinations;
    use crate::numerics::{hyper_pmf, HyperParams};
    use crate::seeding::trial_rng;
    use proptest::prelude::*;

    fn words(q: u32, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| Word::parse(q, w).unwrap()).collect()
    }

    #[test]
    fn warmup_on_all_weight_four_words() {
        assert_eq!(alpha(&ratio(1, 4), &ratio(1, 2)), ratio(1, 2));
        let code = Code::all_of_weight(8, 4).unwrap();
        let out = warmup_with_support(&code, &ratio(1, 4), &[0, 1, 2, 3]).unwrap();
        let r = out.found().unwrap();
        // Four ones on S, or three ones on S and one off it.
        assert_eq!(r.list.len(), 1 + 4 * 4);
        assert_eq!(r.per_word_bound, 2);
        assert!(r.list.members().iter().all(|c| r.center.dist(c) <= 2));
        let mut rng = trial_rng(3, 0);
        for _ in 0..20 {
            let out = warmup_center(&code, &ratio(1, 4), &mut rng).unwrap();
            assert_eq!(out.found().unwrap().list.len(), 17);
        }
    }

    #[test]
    fn warmup_rejects_fractional_alpha_n() {
        // alpha n = 3/2 at n = 5, w = 2, p = 1/4.
        let code = Code::all_of_weight(5, 2).unwrap();
        let err = warmup_center(&code, &ratio(1, 4), &mut trial_rng(0, 0)).unwrap_err();
        assert!(err.to_string().contains("alpha n"));
    }

    #[test]
    fn special_codeword_guarantees() {
        assert_eq!(beta(&ratio(1, 4), &ratio(7, 20), 5), ratio(1, 6));
        let code = Code::all_of_weight(16, 8).unwrap();
        let p = ratio(1, 4);
        let mut found = 0;
        for t in 0..50 {
            let out = special_codeword_attack(&code, &p, 3, &mut trial_rng(11, t)).unwrap();
            let AttackOutcome::Found(r) = out else { continue };
            found += 1;
            let star = &r.list.members()[0];
            assert_eq!(r.center.dist(star), 8 - 6);
            assert!(r.achieved.sum_dist <= 4 * 3);
            // (lambda - beta(1 - 2p)) n = 5; the sum cap is pnL = 12.
            assert_eq!(r.per_word_bound, 5);
            assert_eq!(r.avg_bound, 2 + 2 * 5);
        }
        assert_eq!(found, 50);
    }

    #[test]
    fn special_codeword_shortfall() {
        let code = Code::constant_weight(2, 16, words(2, &["1111111100000000", "0000000011111111"]), 8).unwrap();
        let out = special_codeword_attack(&code, &ratio(1, 4), 3, &mut trial_rng(1, 0)).unwrap();
        assert_eq!(out, AttackOutcome::Shortfall { found: 1, needed: 3 });
    }

    #[test]
    fn sample_weight_is_hypergeometric() {
        // Given c*, a codeword sharing m ones with it shows t ones on a uniform s-subset of
        // Supp(c*) with the hypergeometric law.
        let cstar = Word::parse(2, "11110000").unwrap();
        let supp = cstar.support();
        for (c, shared) in [("11001100", 2), ("11101000", 3), ("00001111", 0)] {
            let c = Word::parse(2, c).unwrap();
            for s in 0..=4usize {
                let total = combinations(4, s).count() as i64;
                for t in 0..=s {
                    let hits = combinations(4, s)
                        .filter(|sub| sub.iter().filter(|&&j| c.get(supp[j]) == 1).count() == t)
                        .count() as i64;
                    assert_eq!(
                        ratio(hits, total),
                        hyper_pmf(HyperParams::new(4, shared, s as i64), t as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn common_support_examples() {
        let code = Code::constant_weight(2, 4, words(2, &["1100", "1010"]), 2).unwrap();
        let r = common_support_center(&code, 2, &mut trial_rng(0, 0)).unwrap();
        assert_eq!(r.center.to_text(), "1000");
        assert_eq!((r.achieved.max_dist, r.achieved.sum_dist), (1, 2));
        let code = Code::constant_weight(2, 4, words(2, &["1100", "0011"]), 2).unwrap();
        let r = common_support_center(&code, 2, &mut trial_rng(0, 0)).unwrap();
        assert_eq!(r.center.to_text(), "0000");
        assert_eq!(r.achieved.max_dist, 2);
    }

    #[test]
    fn partitioned_support_example() {
        let list = ListTuple::new(words(3, &["1100", "2110"])).unwrap();
        let r = partitioned_support_center(&list, &[vec![0], vec![1]]).unwrap();
        assert_eq!(r.center.to_text(), "1100");
        let d: Vec<usize> = list.members().iter().map(|c| r.center.dist(c)).collect();
        assert_eq!(d, vec![0, 2]);
        assert_eq!((r.per_word_bound, r.avg_bound), (2, 3));
        assert!(partitioned_support_center(&list, &[vec![0], vec![0]]).is_err());
        let single = ListTuple::new(words(3, &["2101"])).unwrap();
        let r = partitioned_support_center(&single, &[vec![0, 1, 3]]).unwrap();
        assert_eq!(r.achieved.max_dist, 0);
    }

    #[test]
    fn partition_sizes() {
        let parts = balanced_partition(&[0, 2, 3, 5, 7], 2).unwrap();
        assert_eq!(parts, vec![vec![0, 2, 3], vec![5, 7]]);
        assert!(balanced_partition(&[1], 2).is_err());
    }

    proptest! {
        #[test]
        fn binary_partition_center_is_the_common_support_center(
            masks in proptest::collection::btree_set(0u32..1 << 10, 2..5)
        ) {
            let n = 12;
            // Force two common ones per word at coordinates 10 and 11, plus one more than L.
            let l = masks.len();
            let ws: Vec<Word> = masks
                .iter()
                .map(|m| {
                    let mut s: Vec<usize> = (0..10).filter(|i| m >> i & 1 == 1).collect();
                    s.extend([10, 11]);
                    Word::indicator(n, &s).unwrap()
                })
                .collect();
            let list = ListTuple::new(ws).unwrap();
            let common: Vec<usize> = (0..n).filter(|&i| list.members().iter().all(|c| c.get(i) == 1)).collect();
            prop_assume!(common.len() >= l);
            let r = partitioned_support_center(&list, &balanced_partition(&common, l).unwrap()).unwrap();
            prop_assert_eq!(r.center.support(), common.clone());
            for c in list.members() {
                prop_assert_eq!(r.center.dist(c), c.weight() - common.len());
            }
        }

        #[test]
        fn qary_partition_center_meets_its_caps(
            q in 3u32..6,
            rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 9), 1..4)
        ) {
            let ws: Vec<Word> = rows
                .iter()
                .map(|r| {
                    // The first four coordinates are nonzero in every word.
                    let s: Vec<u32> = r.iter().enumerate().map(|(i, &v)| if i < 4 { 1 + v % (q - 1) } else { v % q }).collect();
                    Word::new(q, &s).unwrap()
                })
                .collect();
            let mut uniq = ws.clone();
            uniq.sort();
            uniq.dedup();
            let list = ListTuple::new(uniq).unwrap();
            let common: Vec<usize> = (0..9).filter(|&i| list.members().iter().all(|c| c.get(i) != 0)).collect();
            let parts = balanced_partition(&common, list.len()).unwrap();
            let r = partitioned_support_center(&list, &parts).unwrap();
            prop_assert!(r.achieved.sum_dist <= r.avg_bound);
        }
    }
}
