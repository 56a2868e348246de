//! Seeded repetitions of a construction on random constant-weight codes.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;

use super::{
    balanced_partition, biased_sample, common_support_center, partitioned_support_center, restricted_subcode,
    special_codeword_attack, warmup_center, weight_shell_subcode, AttackOutcome, AttackResult, ConstructionId,
};
use crate::error::{Error, Result};
use crate::hamming::{Code, ListTuple, Word};
use crate::numerics::{binomial_u, format_rational, rational_to_f64, ratio, ExactRational};
use crate::seeding::trial_rng;

/// `size` distinct uniform binary words of weight `w`, weight-tagged.
pub fn random_constant_weight_code<R: Rng + ?Sized>(n: usize, w: usize, size: usize, rng: &mut R) -> Result<Code> {
    if w > n {
        return Err(Error::domain(format!("weight {w} exceeds length {n}")));
    }
    if binomial_u(n as u64, w as u64) < size.into() {
        return Err(Error::domain(format!("only C({n}, {w}) words of weight {w} exist, asked for {size}")));
    }
    let mut seen = HashSet::with_capacity(size);
    let mut words = Vec::with_capacity(size);
    while words.len() < size {
        let mut support = sample(rng, n, w).into_vec();
        support.sort_unstable();
        let word = Word::indicator(n, &support)?;
        if seen.insert(word.clone()) {
            words.push(word);
        }
    }
    Code::constant_weight(2, n, words, w)
}

/// Parameters for [`run_construction`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionParams {
    pub id: ConstructionId,
    pub p: ExactRational,
    pub lambda: ExactRational,
    pub list_size: usize,
    pub n: usize,
    /// Size of the random constant-weight code.
    pub code_size: usize,
    /// Words drawn by the biased construction; `None` uses its default count.
    pub draws: Option<usize>,
    /// Random centers tried by the shell extraction when it cannot enumerate.
    pub shell_trials: usize,
}

/// One trial: the distances achieved against the caps promised, or the sizes produced.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionRow {
    pub id: ConstructionId,
    pub trial: u64,
    pub n: usize,
    pub code_size: usize,
    /// `found`, `shortfall`, or a construction-specific status.
    pub status: String,
    pub list_len: usize,
    pub per_word_bound: Option<usize>,
    pub avg_bound: Option<usize>,
    pub max_dist: Option<usize>,
    pub sum_dist: Option<usize>,
    /// Size of the extracted or sampled code, where the construction produces one.
    pub produced: Option<usize>,
    /// Reference size for `produced` (averaging bound or pigeonhole floor).
    pub reference: Option<f64>,
}

impl ConstructionRow {
    pub const CSV_HEADER: &'static str =
        "construction,trial,n,code_size,status,list_len,per_word_bound,avg_bound,max_dist,sum_dist,produced,reference";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "NA".to_string(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.id,
            self.trial,
            self.n,
            self.code_size,
            self.status,
            self.list_len,
            opt(self.per_word_bound),
            opt(self.avg_bound),
            opt(self.max_dist),
            opt(self.sum_dist),
            opt(self.produced),
            self.reference.map_or_else(|| "NA".to_string(), |x| x.to_string())
        )
    }

    fn base(params: &ConstructionParams, trial: u64, code_size: usize) -> Self {
        ConstructionRow {
            id: params.id,
            trial,
            n: params.n,
            code_size,
            status: String::new(),
            list_len: 0,
            per_word_bound: None,
            avg_bound: None,
            max_dist: None,
            sum_dist: None,
            produced: None,
            reference: None,
        }
    }

    fn with_attack(mut self, r: &AttackResult) -> Self {
        self.status = "found".into();
        self.list_len = r.list.len();
        self.per_word_bound = Some(r.per_word_bound);
        self.avg_bound = Some(r.avg_bound);
        self.max_dist = Some(r.achieved.max_dist);
        self.sum_dist = Some(r.achieved.sum_dist);
        self
    }

    fn with_outcome(self, o: &AttackOutcome) -> Self {
        match o {
            AttackOutcome::Found(r) => self.with_attack(r),
            AttackOutcome::Shortfall { found, .. } => ConstructionRow {
                status: "shortfall".into(),
                list_len: *found,
                ..self
            },
        }
    }
}

fn weight_of(params: &ConstructionParams) -> Result<usize> {
    let wn = &params.lambda * ratio(params.n as i64, 1);
    if !wn.is_integer() {
        return Err(Error::domain(format!(
            "lambda n = {} is not an integer",
            format_rational(&wn)
        )));
    }
    wn.to_integer().try_into().map_err(|_| Error::domain("lambda must be nonnegative"))
}

/// Runs trial `trial` of a construction on a fresh random code drawn from stream `trial`
/// of `master_seed`. Every attack recomputes its distances and errors with
/// [`Error::Inconsistent`] if a promised identity or cap fails.
pub fn run_construction(params: &ConstructionParams, master_seed: u64, trial: u64) -> Result<ConstructionRow> {
    let mut rng = trial_rng(master_seed, trial);
    let n = params.n;
    let l = params.list_size;
    if params.id == ConstructionId::Biased {
        let s = biased_sample(&params.p, l, n, params.draws, &mut rng)?;
        let mut row = ConstructionRow::base(params, trial, s.drawn);
        row.status = match s.avg_decodable {
            Some(true) => "avg_decodable",
            Some(false) => "not_avg_decodable",
            None => "unchecked",
        }
        .into();
        row.produced = Some(s.code.len());
        // The largest of the n + 1 weight classes holds at least distinct / (n + 1) words.
        row.reference = Some(s.distinct as f64 / (n + 1) as f64);
        return Ok(row);
    }
    let w = weight_of(params)?;
    let code = random_constant_weight_code(n, w, params.code_size, &mut rng)?;
    let row = ConstructionRow::base(params, trial, code.len());
    Ok(match params.id {
        ConstructionId::Warmup => row.with_outcome(&warmup_center(&code, &params.p, &mut rng)?),
        ConstructionId::SpecialCodeword => {
            row.with_outcome(&special_codeword_attack(&code, &params.p, l, &mut rng)?)
        }
        ConstructionId::CommonSupport => row.with_attack(&common_support_center(&code, l, &mut rng)?),
        ConstructionId::PartitionedSupport => {
            let mut picked = sample(&mut rng, code.len(), l).into_vec();
            picked.sort_unstable();
            let words = ListTuple::new(picked.iter().map(|&i| code.words()[i].clone()).collect())?;
            let common: Vec<usize> = (0..n).filter(|&i| words.members().iter().all(|c| c.get(i) != 0)).collect();
            if common.len() < l {
                ConstructionRow {
                    status: "small_common_support".into(),
                    list_len: l,
                    ..row
                }
            } else {
                let parts = balanced_partition(&common, l)?;
                row.with_attack(&partitioned_support_center(&words, &parts)?)
            }
        }
        ConstructionId::WeightShell => {
            let s = weight_shell_subcode(&code, &params.lambda, params.shell_trials, &mut rng)?;
            ConstructionRow {
                status: if s.exhaustive { "exhaustive" } else { "sampled" }.into(),
                produced: Some(s.subcode.len()),
                reference: Some(rational_to_f64(&s.averaging_bound)),
                ..row
            }
        }
        ConstructionId::Restriction => {
            let r = restricted_subcode(&code, &params.p, &mut rng)?;
            ConstructionRow {
                status: "restricted".into(),
                list_len: r.members.len(),
                per_word_bound: Some(r.outside_cap),
                produced: Some(r.restriction.len()),
                ..row
            }
        }
        ConstructionId::Biased => unreachable!("handled above"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(id: ConstructionId, lambda: ExactRational, l: usize) -> ConstructionParams {
        ConstructionParams {
            id,
            p: ratio(1, 4),
            lambda,
            list_size: l,
            n: 16,
            code_size: 24,
            draws: None,
            shell_trials: 16,
        }
    }

    #[test]
    fn random_codes_have_constant_weight() {
        let c = random_constant_weight_code(8, 3, 20, &mut trial_rng(1, 0)).unwrap();
        assert_eq!(c.len(), 20);
        assert!(c.words().iter().all(|w| w.weight() == 3));
        assert!(random_constant_weight_code(4, 2, 7, &mut trial_rng(1, 0)).is_err());
    }

    #[test]
    fn every_construction_runs() {
        for id in ConstructionId::ALL {
            let lambda = match id {
                ConstructionId::Warmup => ratio(3, 8),
                _ => ratio(1, 2),
            };
            let mut p = params(id, lambda, 3);
            if id == ConstructionId::Biased {
                p.n = 12;
                p.list_size = 100;
                p.draws = Some(200);
            }
            let row = run_construction(&p, 7, 0).unwrap();
            assert_eq!(row.csv_row().split(',').count(), ConstructionRow::CSV_HEADER.split(',').count());
            if let (Some(cap), Some(got)) = (row.per_word_bound, row.max_dist) {
                assert!(got <= cap, "{row:?}");
            }
        }
    }

    #[test]
    fn rows_are_reproducible() {
        let p = params(ConstructionId::SpecialCodeword, ratio(1, 2), 3);
        assert_eq!(run_construction(&p, 3, 5).unwrap(), run_construction(&p, 3, 5).unwrap());
    }
}
