//! Exact and randomized decision procedures for list-decodability, average-radius
//! list-decodability and erasure list-decodability.
//!
//! The radius is `e = floor(p n)` with `p` exact; the average-radius test is the integer
//! comparison `sum_dist > e L`. Lists are sets of distinct codewords. For erasures the
//! number of revealed coordinates is `ceil((1 - p) n)`.

mod center;
mod search;
mod witness;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamming::{centroid_of, combinations, dist_stats_of, Code, ErasedWord, ListTuple, Word};
use crate::numerics::{binomial_u, ceil_int, floor_int, format_rational, ExactRational};

pub use center::{optimal_avg_center, optimal_max_center, CENTER_SEARCH_BUDGET};
pub use search::find_violation;
pub use witness::{Center, Witness};

/// Budget on `q^n` for center enumeration.
pub const CENTER_BUDGET: u128 = 1 << 24;
/// Budget on `C(|C|, L)` for subset enumeration.
pub const SUBSET_BUDGET: u128 = 1 << 24;
/// Budget on `C(n, s) |C|` for erasure bucketing.
pub const ERASURE_BUDGET: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    MaxRadius,
    AvgRadius,
    Erasure,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::MaxRadius => "max_radius",
            Mode::AvgRadius => "avg_radius",
            Mode::Erasure => "erasure",
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "max_radius" | "max" => Ok(Mode::MaxRadius),
            "avg_radius" | "avg" => Ok(Mode::AvgRadius),
            "erasure" => Ok(Mode::Erasure),
            _ => Err(Error::parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A code, an exact error fraction `p`, a list size `L` and a mode.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodabilityQuery {
    code: Code,
    p: ExactRational,
    list_size: usize,
    mode: Mode,
    radius: usize,
    support_size: usize,
}

impl DecodabilityQuery {
    pub fn new(code: Code, p: ExactRational, list_size: usize, mode: Mode) -> Result<Self> {
        if !p.is_positive() || p >= ExactRational::one() {
            return Err(Error::domain(format!("p = {} must lie in (0, 1)", format_rational(&p))));
        }
        if list_size == 0 {
            return Err(Error::domain("list size L must be at least 1"));
        }
        let n = ExactRational::from_integer((code.n() as i64).into());
        let radius = floor_int(&(&p * &n)).to_usize().expect("radius fits");
        let support_size = ceil_int(&((ExactRational::one() - &p) * &n))
            .to_usize()
            .expect("support size fits");
        Ok(DecodabilityQuery {
            code,
            p,
            list_size,
            mode,
            radius,
            support_size,
        })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn p(&self) -> &ExactRational {
        &self.p
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `e = floor(p n)`.
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `ceil((1 - p) n)`, the number of revealed coordinates in erasure mode.
    pub fn support_size(&self) -> usize {
        self.support_size
    }

    /// The same query with a different mode.
    pub fn with_mode(&self, mode: Mode) -> Self {
        DecodabilityQuery {
            mode,
            ..self.clone()
        }
    }

    /// The same query with a different list size.
    pub fn with_list_size(&self, list_size: usize) -> Result<Self> {
        DecodabilityQuery::new(self.code.clone(), self.p.clone(), list_size, self.mode)
    }
}

/// Exact strategies for the error modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate all `q^n` centers.
    Centers,
    /// Enumerate all `L`-subsets of the code and solve each for its best center.
    Subsets,
}

/// Which strategies to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyChoice {
    /// Every strategy within budget; disagreement is an error.
    AllFeasible,
    /// Only the given strategy.
    Only(Strategy),
}

/// Result of an exact check.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub decodable: bool,
    pub witness: Option<Witness>,
    pub strategies: Vec<Strategy>,
}

fn center_cost(code: &Code) -> u128 {
    (code.q() as u128).checked_pow(code.n() as u32).unwrap_or(u128::MAX)
}

fn subset_cost(code: &Code, l: usize) -> u128 {
    binomial_u(code.len() as u64, l as u64).to_u128().unwrap_or(u128::MAX)
}

/// Decides list-decodability exactly. Error modes run both strategies when both fit their
/// budgets and cross-check the verdicts; erasure queries go to the bucketing checker.
pub fn check_list_decodable(query: &DecodabilityQuery) -> Result<Decision> {
    if query.mode == Mode::Erasure {
        return check_erasure_list_decodable(query);
    }
    check_list_decodable_with(query, StrategyChoice::AllFeasible)
}

pub fn check_list_decodable_with(query: &DecodabilityQuery, choice: StrategyChoice) -> Result<Decision> {
    if query.mode == Mode::Erasure {
        return Err(Error::domain("erasure queries go through check_erasure_list_decodable"));
    }
    let code = &query.code;
    let l = query.list_size;
    let cc = center_cost(code);
    let sc = subset_cost(code, l);
    let wanted: Vec<Strategy> = match choice {
        StrategyChoice::Only(s) => vec![s],
        StrategyChoice::AllFeasible => {
            let mut v = Vec::new();
            if cc <= CENTER_BUDGET {
                v.push(Strategy::Centers);
            }
            if sc <= SUBSET_BUDGET {
                v.push(Strategy::Subsets);
            }
            if v.is_empty() {
                return Err(Error::over_budget(
                    "center and subset enumeration",
                    cc.min(sc),
                    CENTER_BUDGET,
                ));
            }
            v
        }
    };
    let mut decision: Option<Decision> = None;
    for s in wanted {
        let witness = match s {
            Strategy::Centers => {
                if cc > CENTER_BUDGET {
                    return Err(Error::over_budget("center enumeration q^n", cc, CENTER_BUDGET));
                }
                by_centers(query)
            }
            Strategy::Subsets => {
                if sc > SUBSET_BUDGET {
                    return Err(Error::over_budget("subset enumeration C(|C|, L)", sc, SUBSET_BUDGET));
                }
                by_subsets(query)?
            }
        };
        if let Some(w) = &witness {
            w.verify(query)?;
        }
        match &mut decision {
            None => {
                decision = Some(Decision {
                    decodable: witness.is_none(),
                    witness,
                    strategies: vec![s],
                })
            }
            Some(d) => {
                if d.decodable != witness.is_none() {
                    return Err(Error::Inconsistent(format!(
                        "strategies disagree on {} (L={}, e={})",
                        query.mode, l, query.radius
                    )));
                }
                d.strategies.push(s);
            }
        }
    }
    Ok(decision.expect("at least one strategy ran"))
}

const CHUNK: u128 = 1 << 12;

fn by_centers(query: &DecodabilityQuery) -> Option<Witness> {
    let code = &query.code;
    let (q, n, l, e) = (code.q(), code.n(), query.list_size, query.radius);
    if code.len() < l {
        return None;
    }
    let total = center_cost(code);
    let chunks = total.div_ceil(CHUNK) as u64;
    (0..chunks).into_par_iter().find_map_first(|chunk| {
        let start = chunk as u128 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut x = Word::from_rank(q, n, start).expect("rank in range");
        let mut dists = vec![0usize; code.len()];
        let mut hist = vec![0usize; n + 1];
        for _ in start..end {
            let found = match query.mode {
                Mode::MaxRadius => max_mode_center(code, &x, l, e),
                _ => avg_mode_center(code, &x, l, e, &mut dists, &mut hist),
            };
            if found.is_some() {
                return found;
            }
            x.advance();
        }
        None
    })
}

fn max_mode_center(code: &Code, x: &Word, l: usize, e: usize) -> Option<Witness> {
    let mut count = 0;
    for c in code.words() {
        if x.dist(c) <= e {
            count += 1;
            if count == l {
                break;
            }
        }
    }
    if count < l {
        return None;
    }
    let members: Vec<Word> = code.words().iter().filter(|c| x.dist(c) <= e).take(l).cloned().collect();
    let stat = dist_stats_of(x, &members).max_dist;
    Some(Witness {
        mode: Mode::MaxRadius,
        center: Center::Word(x.clone()),
        list: ListTuple::new(members).expect("codewords are distinct"),
        stat,
    })
}

// Sum of the L smallest distances from x, via a histogram over [0, n].
fn avg_mode_center(
    code: &Code,
    x: &Word,
    l: usize,
    e: usize,
    dists: &mut [usize],
    hist: &mut [usize],
) -> Option<Witness> {
    hist.iter_mut().for_each(|h| *h = 0);
    for (d, c) in dists.iter_mut().zip(code.words()) {
        *d = x.dist(c);
        hist[*d] += 1;
    }
    let mut need = l;
    let mut sum = 0;
    let mut cutoff = 0;
    for (d, &h) in hist.iter().enumerate() {
        let take = h.min(need);
        sum += take * d;
        need -= take;
        if need == 0 {
            cutoff = d;
            break;
        }
    }
    if sum > e * l {
        return None;
    }
    // Take everything below the cutoff distance, then fill with words at the cutoff.
    let mut members: Vec<Word> = Vec::with_capacity(l);
    for (i, c) in code.words().iter().enumerate() {
        if dists[i] < cutoff {
            members.push(c.clone());
        }
    }
    for (i, c) in code.words().iter().enumerate() {
        if members.len() == l {
            break;
        }
        if dists[i] == cutoff {
            members.push(c.clone());
        }
    }
    Some(Witness {
        mode: Mode::AvgRadius,
        center: Center::Word(x.clone()),
        list: ListTuple::new(members).expect("codewords are distinct"),
        stat: sum,
    })
}

fn by_subsets(query: &DecodabilityQuery) -> Result<Option<Witness>> {
    let words = query.code.words();
    let (l, e) = (query.list_size, query.radius);
    let mode = query.mode;
    combinations(words.len(), l)
        .par_bridge()
        .map(|idx| -> Result<Option<Witness>> {
            let members: Vec<Word> = idx.iter().map(|&i| words[i].clone()).collect();
            let (center, stat) = match mode {
                Mode::MaxRadius => match center::minimax_center(&members, Some(e), CENTER_SEARCH_BUDGET)? {
                    Some(found) => found,
                    None => return Ok(None),
                },
                _ => {
                    let c = centroid_of(&members);
                    let s = dist_stats_of(&c, &members).sum_dist;
                    if s > e * l {
                        return Ok(None);
                    }
                    (c, s)
                }
            };
            Ok(Some(Witness {
                mode,
                center: Center::Word(center),
                list: ListTuple::new(members).expect("codewords are distinct"),
                stat,
            }))
        })
        .find_map_any(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// Decides erasure list-decodability: for every set of `ceil((1-p)n)` revealed
/// coordinates, codewords with equal restrictions must form classes of size `< L`.
pub fn check_erasure_list_decodable(query: &DecodabilityQuery) -> Result<Decision> {
    if query.mode != Mode::Erasure {
        return Err(Error::domain("check_erasure_list_decodable needs an erasure query"));
    }
    let code = &query.code;
    let (n, s, l) = (code.n(), query.support_size, query.list_size);
    let supports = binomial_u(n as u64, s as u64).to_u128().unwrap_or(u128::MAX);
    let cost = supports.saturating_mul(code.len() as u128);
    if cost > ERASURE_BUDGET {
        return Err(Error::over_budget("erasure bucketing C(n, s) |C|", cost, ERASURE_BUDGET));
    }
    let witness = if code.len() < l {
        None
    } else {
        combinations(n, s)
            .collect::<Vec<_>>()
            .into_par_iter()
            .find_map_first(|support| erasure_bucket(code, &support, l))
    };
    if let Some(w) = &witness {
        w.verify(query)?;
    }
    Ok(Decision {
        decodable: witness.is_none(),
        witness,
        strategies: Vec::new(),
    })
}

pub(crate) fn erasure_bucket(code: &Code, support: &[usize], l: usize) -> Option<Witness> {
    let mut buckets: HashMap<Word, Vec<usize>> = HashMap::new();
    for (i, c) in code.words().iter().enumerate() {
        let key = c.restrict(support).expect("support within range");
        let b = buckets.entry(key).or_default();
        b.push(i);
        if b.len() == l {
            let members: Vec<Word> = b.iter().map(|&j| code.words()[j].clone()).collect();
            let a = ErasedWord::from_support(&members[0], support).expect("support within range");
            return Some(Witness {
                mode: Mode::Erasure,
                center: Center::Erased(a),
                list: ListTuple::new(members).expect("codewords are distinct"),
                stat: l,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn code(q: u32, words: &[&str]) -> Code {
        let ws: Vec<Word> = words.iter().map(|w| Word::parse(q, w).unwrap()).collect();
        Code::new(q, ws[0].len(), ws).unwrap()
    }

    fn query(c: Code, p: (i64, i64), l: usize, mode: Mode) -> DecodabilityQuery {
        DecodabilityQuery::new(c, ratio(p.0, p.1), l, mode).unwrap()
    }

    #[test]
    fn full_square_examples() {
        let full = Code::full_space(2, 2).unwrap();
        let d = check_list_decodable(&query(full.clone(), (1, 2), 4, Mode::MaxRadius)).unwrap();
        assert!(d.decodable);
        assert_eq!(d.strategies, vec![Strategy::Centers, Strategy::Subsets]);
        let d = check_list_decodable_with(
            &query(full, (1, 2), 3, Mode::MaxRadius),
            StrategyChoice::Only(Strategy::Centers),
        )
        .unwrap();
        assert!(!d.decodable);
        let w = d.witness.unwrap();
        assert_eq!(w.center.to_text(), "00");
        let list: Vec<String> = w.list.members().iter().map(Word::to_text).collect();
        assert_eq!(list, vec!["00", "10", "01"]);
    }

    #[test]
    fn avg_mode_example() {
        let d = check_list_decodable(&query(code(2, &["000", "111"]), (1, 3), 2, Mode::AvgRadius)).unwrap();
        assert!(d.decodable);
        let d = check_list_decodable(&query(code(2, &["000", "011"]), (1, 3), 2, Mode::AvgRadius)).unwrap();
        assert!(!d.decodable);
        assert_eq!(d.witness.unwrap().stat, 2);
    }

    #[test]
    fn erasure_examples() {
        let full = Code::full_space(2, 2).unwrap();
        assert!(!check_erasure_list_decodable(&query(full.clone(), (1, 2), 2, Mode::Erasure)).unwrap().decodable);
        assert!(check_erasure_list_decodable(&query(full, (1, 2), 3, Mode::Erasure)).unwrap().decodable);
        let single = code(2, &["0110"]);
        for p in [(1, 10), (1, 2), (9, 10)] {
            assert!(check_erasure_list_decodable(&query(single.clone(), p, 2, Mode::Erasure)).unwrap().decodable);
        }
        assert!(check_erasure_list_decodable(&query(code(2, &["00", "11"]), (1, 2), 2, Mode::Erasure)).unwrap().decodable);
    }

    #[test]
    fn radius_and_support_rounding() {
        let q = query(code(2, &["00000"]), (1, 3), 2, Mode::Erasure);
        assert_eq!(q.radius(), 1);
        assert_eq!(q.support_size(), 4);
        assert!(DecodabilityQuery::new(code(2, &["0"]), ratio(0, 1), 1, Mode::MaxRadius).is_err());
        assert!(DecodabilityQuery::new(code(2, &["0"]), ratio(1, 2), 0, Mode::MaxRadius).is_err());
    }

    #[test]
    fn witness_text_round_trip() {
        let full = Code::full_space(3, 2).unwrap();
        for mode in [Mode::MaxRadius, Mode::AvgRadius] {
            let qy = query(full.clone(), (1, 2), 3, mode);
            let w = check_list_decodable(&qy).unwrap().witness.unwrap();
            let back = Witness::parse(&w.to_text()).unwrap();
            assert_eq!(back, w);
            back.verify(&qy).unwrap();
        }
        let qy = query(full, (1, 2), 3, Mode::Erasure);
        let w = check_erasure_list_decodable(&qy).unwrap().witness.unwrap();
        assert!(w.to_text().contains('?'));
        assert_eq!(Witness::parse(&w.to_text()).unwrap(), w);
    }

    #[test]
    fn tampered_witness_fails() {
        let qy = query(Code::full_space(2, 2).unwrap(), (1, 2), 3, Mode::MaxRadius);
        let mut w = check_list_decodable(&qy).unwrap().witness.unwrap();
        w.stat += 1;
        assert!(w.verify(&qy).is_err());
    }

    #[test]
    fn over_budget_is_reported() {
        let big = Code::new(2, 30, vec![Word::zero(2, 30).unwrap()]).unwrap();
        let qy = query(big, (1, 4), 1, Mode::MaxRadius);
        let d = check_list_decodable(&qy).unwrap();
        assert_eq!(d.strategies, vec![Strategy::Subsets]);
        assert!(matches!(
            check_list_decodable_with(&qy, StrategyChoice::Only(Strategy::Centers)),
            Err(Error::Resource { .. })
        ));
    }
}
