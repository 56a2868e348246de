//! Randomized search for violations on instances too large for the exact checkers.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hamming::{centroid_of, dist_stats_of, ListTuple, Word};

use super::center::minimax_center;
use super::{erasure_bucket, Center, DecodabilityQuery, Mode, Witness};

// Node budget per trial for the exact center of a sampled list.
const TRIAL_CENTER_BUDGET: u64 = 1 << 14;

/// Looks for a witness with `trials` random probes. A returned witness is verified; `None`
/// proves nothing.
///
/// Probes alternate between (a) a center copied from a random codeword on a random subset
/// of its support and zero elsewhere, whose nearest codewords form the list, and (b) a
/// random `L`-subset of the code solved for its best center. Erasure probes reveal a
/// random coordinate set and bucket the code by restriction.
pub fn find_violation(query: &DecodabilityQuery, seed: u64, trials: u64) -> Result<Option<Witness>> {
    let code = query.code();
    let l = query.list_size();
    if code.len() < l {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = code.n();
    for t in 0..trials {
        let found = match query.mode() {
            Mode::Erasure => {
                let mut support = sample(&mut rng, n, query.support_size()).into_vec();
                support.sort_unstable();
                erasure_bucket(code, &support, l)
            }
            mode if t % 2 == 0 => near_codeword_probe(query, mode, &mut rng),
            mode => subset_probe(query, mode, &mut rng)?,
        };
        if let Some(w) = found {
            w.verify(query)?;
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn near_codeword_probe(query: &DecodabilityQuery, mode: Mode, rng: &mut ChaCha8Rng) -> Option<Witness> {
    let code = query.code();
    let (l, e) = (query.list_size(), query.radius());
    let anchor = &code.words()[rng.random_range(0..code.len())];
    let support = anchor.support();
    let keep = if support.is_empty() { 0 } else { rng.random_range(0..=support.len()) };
    let mut x = Word::zero_unchecked(code.q(), code.n());
    for &i in sample(rng, support.len(), keep).iter().map(|j| &support[j]) {
        x.set_unchecked(i, anchor.get(i));
    }
    let mut order: Vec<(usize, usize)> = code.words().iter().enumerate().map(|(i, c)| (x.dist(c), i)).collect();
    order.sort_unstable();
    let members: Vec<Word> = order[..l].iter().map(|&(_, i)| code.words()[i].clone()).collect();
    let stats = dist_stats_of(&x, &members);
    let (ok, stat) = match mode {
        Mode::MaxRadius => (stats.max_dist <= e, stats.max_dist),
        _ => (stats.sum_dist <= e * l, stats.sum_dist),
    };
    ok.then(|| Witness {
        mode,
        center: Center::Word(x),
        list: ListTuple::new(members).expect("codewords are distinct"),
        stat,
    })
}

fn subset_probe(query: &DecodabilityQuery, mode: Mode, rng: &mut ChaCha8Rng) -> Result<Option<Witness>> {
    let code = query.code();
    let (l, e) = (query.list_size(), query.radius());
    let members: Vec<Word> = sample(rng, code.len(), l)
        .iter()
        .map(|i| code.words()[i].clone())
        .collect();
    let found = match mode {
        Mode::MaxRadius => match minimax_center(&members, Some(e), TRIAL_CENTER_BUDGET) {
            Ok(found) => found,
            // Too expensive to solve exactly; the centroid is still a valid probe.
            Err(_) => {
                let c = centroid_of(&members);
                let m = dist_stats_of(&c, &members).max_dist;
                (m <= e).then_some((c, m))
            }
        },
        _ => {
            let c = centroid_of(&members);
            let s = dist_stats_of(&c, &members).sum_dist;
            (s <= e * l).then_some((c, s))
        }
    };
    Ok(found.map(|(center, stat)| Witness {
        mode,
        center: Center::Word(center),
        list: ListTuple::new(members).expect("codewords are distinct"),
        stat,
    }))
}
