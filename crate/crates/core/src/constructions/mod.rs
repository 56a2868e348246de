//! Explicit adversarial centers, subcode extractions and the biased random code.
//!
//! Every attack recomputes its distances exactly and checks them against the closed-form
//! caps it promises, independently of whether the random draw was lucky.

mod attacks;
mod campaign;
mod extraction;

use std::fmt;

use num_traits::Zero;

pub use attacks::{
    balanced_partition, common_support_center, partitioned_support_center, special_codeword_attack,
    warmup_center,
};
pub use campaign::{random_constant_weight_code, run_construction, ConstructionParams, ConstructionRow};
pub use extraction::{
    biased_sample, expected_common_support, expected_half_distance, intersecting_family_search,
    biased_sample_count, lift_center, restricted_subcode, weight_shell_subcode, BiasedSample, CommonSupport, IntersectionSearch,
    RestrictedSubcode, ShellSubcode,
};

use crate::bounds::{alpha, alpha2, beta};
use crate::checkers::{Center, Mode, Witness};
use crate::error::{Error, Result};
use crate::hamming::{DistStats, ListTuple, Word};
use crate::numerics::{format_rational, ratio, ExactRational};

/// Names accepted by the `construct` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    Warmup,
    SpecialCodeword,
    CommonSupport,
    PartitionedSupport,
    WeightShell,
    Biased,
    Restriction,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 7] = [
        ConstructionId::Warmup,
        ConstructionId::SpecialCodeword,
        ConstructionId::CommonSupport,
        ConstructionId::PartitionedSupport,
        ConstructionId::WeightShell,
        ConstructionId::Biased,
        ConstructionId::Restriction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionId::Warmup => "lemma13",
            ConstructionId::SpecialCodeword => "thm11",
            ConstructionId::CommonSupport => "thm15",
            ConstructionId::PartitionedSupport => "thm16",
            ConstructionId::WeightShell => "lemma12",
            ConstructionId::Biased => "thm18",
            ConstructionId::Restriction => "lemma19",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ConstructionId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::parse(format!("unknown construction {s:?}")))
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A center, the list it attacks, the caps the construction guarantees and the distances
/// actually achieved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackResult {
    pub center: Word,
    pub list: ListTuple,
    /// Guaranteed cap on every member's distance to the center.
    pub per_word_bound: usize,
    /// Guaranteed cap on the distance sum.
    pub avg_bound: usize,
    pub achieved: DistStats,
}

impl AttackResult {
    /// Computes the achieved statistics and fails if they break the promised caps.
    pub(crate) fn checked(center: Word, list: ListTuple, per_word_bound: usize, avg_bound: usize) -> Result<Self> {
        let achieved = crate::hamming::dist_stats(&center, &list)?;
        if achieved.max_dist > per_word_bound || achieved.sum_dist > avg_bound {
            return Err(Error::Inconsistent(format!(
                "attack achieved (max {}, sum {}) beyond its caps (max {per_word_bound}, sum {avg_bound})",
                achieved.max_dist, achieved.sum_dist
            )));
        }
        Ok(AttackResult {
            center,
            list,
            per_word_bound,
            avg_bound,
            achieved,
        })
    }

    /// Whether the list violates `(p, L)` decodability at radius `e` in the given error mode.
    pub fn violates(&self, mode: Mode, e: usize) -> bool {
        match mode {
            Mode::MaxRadius => self.achieved.max_dist <= e,
            Mode::AvgRadius => self.achieved.avg_within(self.list.len(), e),
            Mode::Erasure => false,
        }
    }

    /// The result in witness form for an error mode.
    pub fn to_witness(&self, mode: Mode) -> Result<Witness> {
        let stat = match mode {
            Mode::MaxRadius => self.achieved.max_dist,
            Mode::AvgRadius => self.achieved.sum_dist,
            Mode::Erasure => return Err(Error::domain("attack centers are words, not erasure patterns")),
        };
        Ok(Witness {
            mode,
            center: Center::Word(self.center.clone()),
            list: self.list.clone(),
            stat,
        })
    }
}

/// An attack that either produced a list or came up short of the required size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttackOutcome {
    Found(AttackResult),
    Shortfall { found: usize, needed: usize },
}

impl AttackOutcome {
    pub fn found(&self) -> Option<&AttackResult> {
        match self {
            AttackOutcome::Found(r) => Some(r),
            AttackOutcome::Shortfall { .. } => None,
        }
    }
}

/// `r * n` as an integer, or a domain error naming the quantity.
pub(crate) fn scaled(r: &ExactRational, n: usize, what: &str) -> Result<usize> {
    let v = r * ratio(n as i64, 1);
    if !v.is_integer() || v < ExactRational::zero() {
        return Err(Error::domain(format!(
            "{what} = {} is not a nonnegative integer",
            format_rational(&v)
        )));
    }
    Ok(v.to_integer().try_into().expect("bounded by n"))
}

pub(crate) fn check_p(p: &ExactRational) -> Result<()> {
    if *p <= ExactRational::zero() || *p >= ratio(1, 2) {
        return Err(Error::domain(format!("p = {} must lie in (0, 1/2)", format_rational(p))));
    }
    Ok(())
}

/// Lengths in `n_min..=n_max` at which the construction's set sizes are all integers
/// for the given `p`, `lambda` and `L`.
pub fn suggest_admissible(
    id: ConstructionId,
    p: &ExactRational,
    lambda: &ExactRational,
    l: u64,
    n_min: usize,
    n_max: usize,
) -> Vec<usize> {
    let half = ratio(1, 2);
    let needs: Vec<ExactRational> = match id {
        ConstructionId::Warmup => vec![lambda.clone(), alpha(p, lambda)],
        ConstructionId::SpecialCodeword => vec![lambda.clone(), beta(p, lambda, l)],
        ConstructionId::Restriction => {
            let a2 = alpha2(p, lambda);
            vec![lambda.clone(), &a2 * &half]
        }
        _ => vec![lambda.clone()],
    };
    (n_min..=n_max)
        .filter(|&n| needs.iter().all(|r| (r * ratio(n as i64, 1)).is_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ConstructionId::ALL {
            assert_eq!(ConstructionId::parse(id.as_str()).unwrap(), id);
        }
        assert!(ConstructionId::parse("lemma14").is_err());
    }

    #[test]
    fn admissible_lengths() {
        // beta = 3/8 at p = 1/4, lambda = 1/2, L = 3.
        let ns = suggest_admissible(ConstructionId::SpecialCodeword, &ratio(1, 4), &ratio(1, 2), 3, 8, 40);
        assert_eq!(ns, vec![8, 16, 24, 32, 40]);
        // alpha2 = 1/2 at p = 1/4, lambda = 3/8; needs 8 | 3n and 4 | n.
        let ns = suggest_admissible(ConstructionId::Restriction, &ratio(1, 4), &ratio(3, 8), 3, 1, 20);
        assert_eq!(ns, vec![8, 16]);
        assert!(scaled(&ratio(3, 8), 12, "beta n").is_err());
        assert_eq!(scaled(&ratio(3, 8), 16, "beta n").unwrap(), 6);
    }
}
