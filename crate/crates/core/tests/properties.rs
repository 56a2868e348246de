use num_traits::{One, Zero};
use proptest::prelude::*;

use listdec::checkers::{check_list_decodable, DecodabilityQuery, Mode};
use listdec::hamming::{centroid, dist_stats, parse_code, write_code, Code, ListTuple, Word};
use listdec::numerics::{format_rational, ExactRational, hyper_pmf, hyper_tail, parse_rational, ratio, HyperParams};

fn word(q: u32, n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..q, n).prop_map(move |s| Word::new(q, &s).unwrap())
}

fn words(q: u32, n: usize, max: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(q, n), 1..=max).prop_map(|mut ws| {
        ws.sort_by_key(Word::rank);
        ws.dedup();
        ws
    })
}

proptest! {
    #[test]
    fn distance_is_a_metric((a, b, c) in (1usize..40).prop_flat_map(|n| (word(3, n), word(3, n), word(3, n)))) {
        let ab = a.distance(&b).unwrap();
        prop_assert_eq!(ab, b.distance(&a).unwrap());
        prop_assert_eq!(ab, a.sub_mod(&b).unwrap().weight());
        prop_assert_eq!(a.distance(&a).unwrap(), 0);
        prop_assert!(a.distance(&c).unwrap() <= ab + b.distance(&c).unwrap());
    }

    #[test]
    fn rank_and_text_round_trip(w in (1usize..20).prop_flat_map(|n| word(5, n))) {
        prop_assert_eq!(Word::from_rank(5, w.len(), w.rank()).unwrap(), w.clone());
        prop_assert_eq!(Word::parse(5, &w.to_text()).unwrap(), w);
    }

    #[test]
    fn code_files_round_trip(ws in (1usize..12).prop_flat_map(|n| words(3, n, 20))) {
        let n = ws[0].len();
        let code = Code::new(3, n, ws).unwrap();
        prop_assert_eq!(parse_code(&write_code(&code).unwrap()).unwrap(), code);
    }

    #[test]
    fn rationals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = ratio(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn hypergeometric_pmf_normalizes((n, m, s) in (1i64..40).prop_flat_map(|n| (Just(n), 0..=n, 0..=n))) {
        let h = HyperParams::new(n, m, s);
        let total = (0..=s).fold(ExactRational::zero(), |acc, t| acc + hyper_pmf(h, t));
        prop_assert!(total.is_one());
        prop_assert!(hyper_tail(h, 0).is_one());
        prop_assert!(hyper_tail(h, s + 1).is_zero());
    }

    #[test]
    fn centroid_minimizes_total_distance(ws in words(2, 7, 5), x in word(2, 7)) {
        let list = ListTuple::new(ws).unwrap();
        let best = dist_stats(&centroid(&list), &list).unwrap().sum_dist;
        prop_assert!(best <= dist_stats(&x, &list).unwrap().sum_dist);
    }

    #[test]
    fn decodability_is_monotone(ws in words(2, 6, 12), r in 1i64..3, l in 1usize..4) {
        let code = Code::new(2, 6, ws).unwrap();
        let p = ratio(r, 6);
        let decides = |p: &ExactRational, l: usize| {
            let q = DecodabilityQuery::new(code.clone(), p.clone(), l, Mode::MaxRadius).unwrap();
            check_list_decodable(&q).unwrap().decodable
        };
        let here = decides(&p, l);
        if here {
            prop_assert!(decides(&p, l + 1));
            prop_assert!(r == 1 || decides(&ratio(r - 1, 6), l));
        }
    }
}
