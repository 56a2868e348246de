//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! criterion fails or overruns its time limit.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;

use listdec::bounds::{alpha, alpha2_identity_holds, alpha_identity_holds, beta, overlap_exact_expectation};
use listdec::checkers::{check_list_decodable_with, DecodabilityQuery, Mode, Strategy, StrategyChoice};
use listdec::constructions::{
    balanced_partition, common_support_center, expected_common_support, expected_half_distance,
    partitioned_support_center, random_constant_weight_code, restricted_subcode, special_codeword_attack,
    warmup_center, AttackOutcome,
};
use listdec::facts::{
    check_centroid, check_dominance, check_interchange, check_overlap_ladder, check_sweeps, enumerate_overlap,
};
use listdec::hamming::{combinations, Code, ListTuple, Word};
use listdec::numerics::{format_rational, rational_to_f64, ratio, ExactRational};
use listdec::random_codes::{
    affine_closure, ball_sum_estimate, ball_sum_exact, count_witnesses, exact_expected_w, independent_erasure_list,
    mc_campaign, CodeKind, CodeMap, RandomCodeSpec,
};
use listdec::seeding::trial_rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hypergeometric_laws() -> Outcome {
    let a = check_interchange(30);
    let b = check_dominance(30);
    ensure(a.satisfied() && b.satisfied(), || format!("{a:?} {b:?}"))?;
    Ok(format!(
        "interchange {} checks, dominance {} checks, 0 violations",
        a.checked, b.checked
    ))
}

fn centroid_optimality() -> Outcome {
    let s = check_centroid(1000, 2024);
    ensure(s.satisfied(), || format!("{} of {} lists violate", s.violations, s.checked))?;
    Ok(format!("{} random lists, 0 violations", s.checked))
}

fn random_binary_code<R: Rng>(rng: &mut R, n: usize, size: usize) -> Code {
    let mut words: Vec<Word> = Vec::with_capacity(size);
    while words.len() < size {
        let w = Word::from_rank(2, n, rng.random_range(0..1u128 << n)).unwrap();
        if !words.contains(&w) {
            words.push(w);
        }
    }
    Code::new(2, n, words).unwrap()
}

fn checker_cross_oracle() -> Outcome {
    let mut compared = 0u64;
    let mut avg_true = 0u64;
    for t in 0..1000u64 {
        let mut rng = trial_rng(77, t);
        let n = rng.random_range(3..=12usize);
        let size = rng.random_range(1..=32usize.min(1 << n));
        let l = rng.random_range(1..=4usize);
        let p = ratio(rng.random_range(1..=(n as i64 - 1) / 2 + 1), n as i64);
        let code = random_binary_code(&mut rng, n, size);
        let mut verdicts = Vec::new();
        for mode in [Mode::MaxRadius, Mode::AvgRadius] {
            let q = DecodabilityQuery::new(code.clone(), p.clone(), l, mode).map_err(|e| e.to_string())?;
            let by_centers = check_list_decodable_with(&q, StrategyChoice::Only(Strategy::Centers))
                .map_err(|e| format!("trial {t}: {e}"))?;
            let by_subsets = check_list_decodable_with(&q, StrategyChoice::Only(Strategy::Subsets))
                .map_err(|e| format!("trial {t}: {e}"))?;
            ensure(by_centers.decodable == by_subsets.decodable, || {
                format!("trial {t} {mode}: strategies disagree")
            })?;
            for w in by_centers.witness.iter().chain(by_subsets.witness.iter()) {
                w.verify(&q).map_err(|e| format!("trial {t} {mode}: bad witness: {e}"))?;
            }
            compared += 1;
            verdicts.push(by_centers.decodable);
        }
        if verdicts[1] {
            avg_true += 1;
            ensure(verdicts[0], || format!("trial {t}: average-radius decodable but not list-decodable"))?;
        }
    }
    Ok(format!(
        "{compared} strategy comparisons agree; avg => max held on {avg_true} avg-decodable codes"
    ))
}

fn construction_identities() -> Outcome {
    // Rational identities over a grid of p < lambda <= 1/2.
    let mut identities = 0;
    for pd in 3..=40i64 {
        for pn in 1..pd {
            let p = ratio(pn, pd);
            if p >= ratio(1, 2) {
                continue;
            }
            for ln in 1..=50i64 {
                let lambda = ratio(ln, 100);
                if lambda <= p {
                    continue;
                }
                ensure(alpha_identity_holds(&p, &lambda) && alpha2_identity_holds(&p, &lambda), || {
                    format!("identity fails at p={}, lambda={}", format_rational(&p), format_rational(&lambda))
                })?;
                identities += 1;
            }
        }
    }
    let (n, l) = (16usize, 3usize);
    let p = ratio(1, 4);
    let half = ratio(1, 2);
    assert_eq!(&half - alpha(&p, &half) * (ExactRational::from_integer(1.into()) - ratio(2, 1) * &p), p);
    let bn: usize = (beta(&p, &half, l as u64) * ratio(n as i64, 1)).to_integer().try_into().unwrap();
    let mut found = [0u64; 5];
    for t in 0..1000u64 {
        let mut rng = trial_rng(4242, t);
        let code = random_constant_weight_code(n, 8, 64, &mut rng).map_err(|e| e.to_string())?;
        let err = |e: listdec::Error| format!("seed {t}: {e}");

        if let AttackOutcome::Found(r) = warmup_center(&code, &p, &mut rng).map_err(err)? {
            ensure(r.list.members().iter().all(|c| r.center.distance(c).unwrap() <= n / 4), || format!("seed {t}: warmup"))?;
            found[0] += 1;
        }

        if let AttackOutcome::Found(r) = special_codeword_attack(&code, &p, l, &mut rng).map_err(err)? {
            let m = r.list.members();
            // d(x, c*) = (lambda - beta) n and every other member within (lambda - beta(1-2p)) n.
            let cap = (8 * 2 - bn) / 2; // lambda n - beta n (1 - 2p) with 1 - 2p = 1/2
            ensure(r.center.distance(&m[0]).unwrap() == 8 - bn, || format!("seed {t}: d(x, c*)"))?;
            ensure(m[1..].iter().all(|c| r.center.distance(c).unwrap() <= cap), || format!("seed {t}: member cap"))?;
            found[1] += 1;
        }

        let r = common_support_center(&code, l, &mut rng).map_err(err)?;
        let common = (0..n).filter(|&i| r.list.members().iter().all(|c| c.get(i) == 1)).count();
        ensure(r.list.members().iter().all(|c| r.center.distance(c).unwrap() == 8 - common), || {
            format!("seed {t}: common support distance")
        })?;
        found[2] += 1;

        let members: Vec<Word> = r.list.members().to_vec();
        let support: Vec<usize> = (0..n).filter(|&i| members.iter().all(|c| c.get(i) != 0)).collect();
        if support.len() >= l {
            let parts = balanced_partition(&support, l).map_err(err)?;
            let list = ListTuple::new(members).map_err(err)?;
            let r = partitioned_support_center(&list, &parts).map_err(err)?;
            for (c, part) in r.list.members().iter().zip(&parts) {
                ensure(r.center.distance(c).unwrap() <= c.weight() - part.len(), || format!("seed {t}: partitioned cap"))?;
            }
            found[3] += 1;
        }

        let light = random_constant_weight_code(n, 6, 64, &mut rng).map_err(|e| e.to_string())?;
        let sub = restricted_subcode(&light, &p, &mut rng).map_err(err)?;
        for &k in &sub.members {
            let c = &light.words()[k];
            ensure(6 - c.weight_on(&sub.support) <= sub.outside_cap, || format!("seed {t}: off-set weight"))?;
        }
        found[4] += 1;
    }
    Ok(format!(
        "{identities} rational identity points; runs with lists: warmup {}, special {}, common {}, partitioned {}, restriction {}",
        found[0], found[1], found[2], found[3], found[4]
    ))
}

fn common_support_brute(code: &Code, l: usize) -> ExactRational {
    let mut total = 0i64;
    let mut count = 0i64;
    for subset in combinations(code.len(), l) {
        total += (0..code.n())
            .filter(|&i| subset.iter().all(|&j| code.words()[j].get(i) == 1))
            .count() as i64;
        count += 1;
    }
    ratio(total, count)
}

fn common_support_expectation() -> Outcome {
    let code = Code::all_of_weight(4, 2).map_err(|e| e.to_string())?;
    let e = expected_common_support(&code, 2).map_err(|e| e.to_string())?;
    ensure(e.exact == ratio(4, 5) && common_support_brute(&code, 2) == e.exact, || {
        format!("E|S| = {}", format_rational(&e.exact))
    })?;
    let mut mc_ok = 0;
    for t in 0..100u64 {
        let mut rng = trial_rng(505, t);
        let n = rng.random_range(6..=16usize);
        let w = rng.random_range(1..=n / 2);
        let m = rng.random_range(2..=20usize.min(listdec::numerics::binomial(n as i64, w as i64).try_into().unwrap_or(20)));
        let l = rng.random_range(2..=m.min(4));
        let code = random_constant_weight_code(n, w, m, &mut rng).map_err(|e| e.to_string())?;
        let e = expected_common_support(&code, l).map_err(|e| e.to_string())?;
        ensure(e.exact >= e.lower_bound, || format!("code {t}: exact below the convexity bound"))?;
        ensure(e.exact == common_support_brute(&code, l), || format!("code {t}: exact differs from brute force"))?;
        // Monte Carlo mean of |S| over random L-subsets, within 4 standard errors.
        let trials = 2000;
        let samples: Vec<f64> = (0..trials)
            .map(|_| {
                let idx = rand::seq::index::sample(&mut rng, m, l);
                (0..n).filter(|&i| idx.iter().all(|j| code.words()[j].get(i) == 1)).count() as f64
            })
            .collect();
        let mean = samples.iter().sum::<f64>() / trials as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        let se = (var / trials as f64).sqrt();
        if (mean - rational_to_f64(&e.exact)).abs() <= 4.0 * se + 1e-12 {
            mc_ok += 1;
        }
    }
    ensure(mc_ok >= 98, || format!("Monte Carlo mean within 4 SE on only {mc_ok}/100 codes"))?;
    Ok(format!("E|S| = 4/5 by formula and 15-pair enumeration; 100 codes meet the bound, MC within 4 SE on {mc_ok}/100"))
}

fn all_tables(n: usize, k: usize) -> impl Iterator<Item = CodeMap> {
    let messages = 1usize << k;
    let bits = n * messages;
    (0..1u128 << bits).map(move |r| {
        let images = (0..messages)
            .map(|i| Word::from_rank(2, n, (r >> (i * n)) & ((1 << n) - 1)).unwrap())
            .collect();
        CodeMap::from_images(2, k, n, images).unwrap()
    })
}

fn expected_w_reproduction() -> Outcome {
    let mut exact_cases = 0;
    for (n, k, l) in [(2usize, 1usize, 2usize), (3, 1, 2), (3, 2, 2)] {
        for mode in [Mode::MaxRadius, Mode::Erasure] {
            for p in [ratio(1, 3), ratio(1, 2)] {
                let spec = RandomCodeSpec::new(2, k, n, CodeKind::General, 0).map_err(|e| e.to_string())?;
                let exact = exact_expected_w(&spec, mode, &p, l).map_err(|e| e.to_string())?;
                let mut total = ExactRational::zero();
                let mut tables = 0i64;
                for map in all_tables(n, k) {
                    let w = count_witnesses(&map, mode, &p, l).map_err(|e| e.to_string())?.w;
                    total += ExactRational::from_integer(w.into());
                    tables += 1;
                }
                let mean = total / ratio(tables, 1);
                ensure(mean == exact, || {
                    format!(
                        "(n,k,L)=({n},{k},{l}) {mode} p={}: enumeration {} vs exact {}",
                        format_rational(&p),
                        format_rational(&mean),
                        format_rational(&exact)
                    )
                })?;
                exact_cases += 1;
            }
        }
    }
    let mut mc_cases = 0;
    let mut chebyshev = 0;
    for (n, k, mode, p, l) in [
        (8usize, 3usize, Mode::MaxRadius, ratio(1, 4), 2usize),
        (8, 3, Mode::Erasure, ratio(1, 4), 2),
        (6, 2, Mode::MaxRadius, ratio(1, 3), 3),
        (7, 3, Mode::Erasure, ratio(2, 7), 3),
    ] {
        let spec = RandomCodeSpec::new(2, k, n, CodeKind::General, 99).map_err(|e| e.to_string())?;
        let r = mc_campaign(&spec, mode, &p, l, 10_000).map_err(|e| e.to_string())?;
        ensure(r.mean_within(4.0) == Some(true), || {
            format!(
                "n={n} {mode}: mean {:?} vs exact {}",
                r.mean_w.as_ref().map(rational_to_f64),
                rational_to_f64(&r.exact_ew)
            )
        })?;
        // Pr[W = 0] <= Var W / (E W)^2; the empirical zero rate must not contradict it.
        if let (Some(cb), Some((lo, _))) = (&r.chebyshev_bound, r.pr_w0_ci) {
            ensure(lo <= rational_to_f64(cb) + 1e-12, || {
                format!("n={n} {mode}: Pr[W=0] CI low {lo} above Chebyshev bound {}", rational_to_f64(cb))
            })?;
            chebyshev += 1;
        }
        mc_cases += 1;
    }
    Ok(format!(
        "{exact_cases} exact enumeration cases match; {mc_cases} Monte Carlo means within 4 SE at 10^4 trials; \
         Chebyshev consistent on {chebyshev}"
    ))
}

fn linear_amplification() -> Outcome {
    let mut hits = 0;
    for t in 0..1000u64 {
        let q = [2u32, 3, 5][(t % 3) as usize];
        let mut rng = trial_rng(31, t);
        let n = rng.random_range(4..=if q == 5 { 7 } else { 10 });
        let k = rng.random_range(2..=(if q == 2 { 5 } else { 3 }).min(n - 1));
        let l = rng.random_range(2..=3usize).min(k);
        let spec = RandomCodeSpec::new(q, k, n, CodeKind::Linear, 31).map_err(|e| e.to_string())?;
        let map = spec.sample(t).map_err(|e| e.to_string())?;
        if let Some(found) = independent_erasure_list(&map, &ratio(1, 2), l).map_err(|e| e.to_string())? {
            let c = affine_closure(&found.list, &found.center, true).map_err(|e| e.to_string())?;
            let want = (q as usize).pow(l as u32 - 1);
            ensure(c.agreeing == want && c.independent == Some(true), || {
                format!("trial {t}: closure has {} codewords, expected {want}", c.agreeing)
            })?;
            hits += 1;
        }
    }
    ensure(hits > 0, || "no trial produced an independent list".into())?;
    Ok(format!("{hits} of 1000 codes had an independent list; every closure had exactly q^(L-1) codewords"))
}

fn overlap_expectation() -> Outcome {
    let formula = overlap_exact_expectation(4, 2).map_err(|e| e.to_string())?;
    let brute = enumerate_overlap(4, 2);
    ensure(formula == ratio(13, 24) && brute == formula, || {
        format!("formula {} enumeration {}", format_rational(&formula), format_rational(&brute))
    })?;
    let ladder: Vec<u64> = (1..=16).map(|k| 8 * k).collect();
    let s = check_overlap_ladder(&ladder);
    ensure(s.satisfied(), || format!("ladder not decreasing: {s:?}"))?;
    Ok(format!("13/24 by formula and 36-pair enumeration; ladder decreasing; {}", s.note))
}

fn inequality_sweeps() -> Outcome {
    let sweeps = check_sweeps(1000);
    let mut parts = Vec::new();
    for s in &sweeps {
        ensure(s.satisfied(), || format!("{}: {} violations", s.fact_id, s.violations))?;
        parts.push(format!("{} {}", s.fact_id, s.checked));
    }
    Ok(format!("0 violations ({})", parts.join(", ")))
}

fn ball_sum_toy() -> Outcome {
    let exact = ball_sum_exact(2, &ratio(1, 2), 2, 2).map_err(|e| e.to_string())?;
    let ball: Vec<Word> = Word::all(2, 2).unwrap().filter(|w| w.weight() <= 1).collect();
    let hits = ball
        .iter()
        .flat_map(|a| ball.iter().map(move |b| a.add_mod(b).unwrap()))
        .filter(|s| s.weight() <= 1)
        .count();
    ensure(exact == ratio(7, 9) && ratio(hits as i64, 9) == exact, || format!("exact {}", format_rational(&exact)))?;
    let est = ball_sum_estimate(2, &ratio(1, 2), 2, 2, 100_000, &mut trial_rng(10, 0)).map_err(|e| e.to_string())?;
    ensure(est.ci.0 <= 7.0 / 9.0 && 7.0 / 9.0 <= est.ci.1, || format!("CI {:?} misses 7/9", est.ci))?;
    Ok(format!("7/9 by enumeration; estimate {:.4} with 99% CI [{:.4}, {:.4}]", est.estimate, est.ci.0, est.ci.1))
}

fn half_distance_bound() -> Outcome {
    for t in 0..100u64 {
        let mut rng = trial_rng(1111, t);
        let n = rng.random_range(4..=16usize);
        let w = rng.random_range(1..n);
        let max_m = listdec::numerics::binomial(n as i64, w as i64).try_into().unwrap_or(64usize).min(64);
        let m = rng.random_range(1..=max_m);
        let code = random_constant_weight_code(n, w, m, &mut rng).map_err(|e| e.to_string())?;
        let (ed, cap) = expected_half_distance(&code).map_err(|e| e.to_string())?;
        ensure(ed <= cap, || format!("code {t}: E delta {} > {}", format_rational(&ed), format_rational(&cap)))?;
        // Pairs with replacement: E d / (2n).
        let total: usize = code.words().iter().flat_map(|a| code.words().iter().map(move |b| a.distance(b).unwrap())).sum();
        let brute = ratio(total as i64, (2 * n * m * m) as i64);
        ensure(brute == ed, || format!("code {t}: column formula differs from pair enumeration"))?;
    }
    Ok("100 codes: E delta <= lambda(1 - lambda), column formula equals pair enumeration".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("hypergeometric interchange and dominance, n <= 30", 60, hypergeometric_laws),
        ("centroid optimality on 1000 random lists", 60, centroid_optimality),
        ("checker strategies agree on 1000 random codes", 300, checker_cross_oracle),
        ("construction identities over a 1000-seed campaign", 300, construction_identities),
        ("expected common support", 60, common_support_expectation),
        ("exact E W reproduction", 600, expected_w_reproduction),
        ("linear erasure amplification", 300, linear_amplification),
        ("overlap expectation 13/24 and decreasing ladder", 60, overlap_expectation),
        ("entropy inequality sweeps at step 1/1000", 300, inequality_sweeps),
        ("ball-sum toy case 7/9", 60, ball_sum_toy),
        ("expected half-distance bound", 60, half_distance_bound),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(limit) => Err(format!("{d}; took {:.1}s, limit {limit}s", elapsed.as_secs_f64())),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail} ({:.2}s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
