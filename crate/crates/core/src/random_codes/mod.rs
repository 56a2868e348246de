//! Random general and linear codes, exact witness counts and Monte Carlo campaigns.

mod ball_sums;
mod campaign;
mod count;
mod field;

use std::fmt;

use rand::Rng;

pub use ball_sums::{ball_sum_estimate, BALL_SUM_BUDGET, ball_sum_exact, ball_sum_ladder, BallSumEstimate, LadderStep};
pub use campaign::{
    k_for_gap, list_size_sweep, mc_campaign, wilson_interval, CampaignReport, SweepPoint, WILSON_Z99,
};
pub use count::{
    affine_closure, count_witnesses, count_witnesses_with, exact_expected_w, independent_erasure_list, AffineClosure,
    IndependentErasureList, ListKind, WitnessStats, COUNT_BUDGET,
};
pub use field::{is_prime, rank_mod_q};

use crate::error::{Error, Result};
use crate::hamming::{Code, Word};
use crate::seeding::trial_rng;

/// Largest message space a sampler will tabulate.
pub const MESSAGE_BUDGET: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    General,
    Linear,
}

impl CodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CodeKind::General => "general",
            CodeKind::Linear => "linear",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(CodeKind::General),
            "linear" => Ok(CodeKind::Linear),
            _ => Err(Error::parse(format!("unknown code kind {s:?} (general, linear)"))),
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Distribution of a random code: alphabet, message length, block length and kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomCodeSpec {
    pub q: u32,
    pub k: usize,
    pub n: usize,
    pub kind: CodeKind,
    pub master_seed: u64,
}

impl RandomCodeSpec {
    pub fn new(q: u32, k: usize, n: usize, kind: CodeKind, master_seed: u64) -> Result<Self> {
        if !(2..=crate::hamming::MAX_Q).contains(&q) {
            return Err(Error::domain(format!("alphabet size {q} out of range")));
        }
        if k > n || n == 0 {
            return Err(Error::domain(format!("need 0 <= k <= n and n > 0, got k = {k}, n = {n}")));
        }
        if kind == CodeKind::Linear && !is_prime(q) {
            return Err(Error::domain(format!("linear codes need a prime field, q = {q}")));
        }
        let spec = RandomCodeSpec {
            q,
            k,
            n,
            kind,
            master_seed,
        };
        spec.messages()?;
        Ok(spec)
    }

    /// `q^k`, checked against the message budget.
    pub fn messages(&self) -> Result<usize> {
        let m = (self.q as u128)
            .checked_pow(self.k as u32)
            .filter(|&m| m <= MESSAGE_BUDGET)
            .ok_or_else(|| Error::over_budget("message table", u128::MAX, MESSAGE_BUDGET))?;
        Ok(m as usize)
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Draws trial `index` of this distribution.
    pub fn sample(&self, index: u64) -> Result<CodeMap> {
        match self.kind {
            CodeKind::General => sample_general_code(self, index),
            CodeKind::Linear => sample_linear_code(self, index),
        }
    }
}

/// An encoding map `[q]^k -> [q]^n` tabulated by message rank. Images may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMap {
    q: u32,
    k: usize,
    n: usize,
    kind: CodeKind,
    images: Vec<Word>,
    /// Images of the unit vectors, for linear maps.
    basis: Option<Vec<Word>>,
}

impl CodeMap {
    /// A general map from its table of images, listed by message rank.
    pub fn from_images(q: u32, k: usize, n: usize, images: Vec<Word>) -> Result<Self> {
        let expect = (q as usize).pow(k as u32);
        if images.len() != expect {
            return Err(Error::shape(format!("expected {expect} images, got {}", images.len())));
        }
        if let Some(w) = images.iter().find(|w| w.q() != q || w.len() != n) {
            return Err(Error::shape(format!("image {w} does not lie in [{q}]^{n}")));
        }
        Ok(CodeMap {
            q,
            k,
            n,
            kind: CodeKind::General,
            images,
            basis: None,
        })
    }

    /// The linear map sending the i-th unit vector to `basis[i]`.
    pub fn from_basis(q: u32, n: usize, basis: Vec<Word>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::domain(format!("linear codes need a prime field, q = {q}")));
        }
        if let Some(w) = basis.iter().find(|w| w.q() != q || w.len() != n) {
            return Err(Error::shape(format!("basis image {w} does not lie in [{q}]^{n}")));
        }
        let k = basis.len();
        let total = (q as usize).pow(k as u32);
        let mut images = Vec::with_capacity(total);
        for r in 0..total {
            let msg = Word::from_rank(q, k, r as u128)?;
            let mut img = Word::zero_unchecked(q, n);
            for (i, b) in basis.iter().enumerate() {
                let x = msg.get(i);
                if x != 0 {
                    img.add_scaled_assign(b, x);
                }
            }
            images.push(img);
        }
        Ok(CodeMap {
            q,
            k,
            n,
            kind: CodeKind::Linear,
            images,
            basis: Some(basis),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Images indexed by message rank.
    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn basis(&self) -> Option<&[Word]> {
        self.basis.as_deref()
    }

    pub fn message(&self, rank: usize) -> Word {
        Word::from_rank(self.q, self.k, rank as u128).expect("rank below q^k")
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.images.len());
        self.images.iter().all(|w| seen.insert(w))
    }

    /// The set of distinct images as a code.
    pub fn to_code(&self) -> Code {
        let mut seen = std::collections::HashSet::with_capacity(self.images.len());
        let words: Vec<Word> = self.images.iter().filter(|w| seen.insert(*w)).cloned().collect();
        Code::new(self.q, self.n, words).expect("distinct images of a common shape")
    }
}

fn uniform_word<R: Rng + ?Sized>(q: u32, n: usize, rng: &mut R) -> Word {
    let mut w = Word::zero_unchecked(q, n);
    for i in 0..n {
        w.set_unchecked(i, rng.random_range(0..q));
    }
    w
}

/// Independent uniform images for every message, drawn from the stream of `index`.
pub fn sample_general_code(spec: &RandomCodeSpec, index: u64) -> Result<CodeMap> {
    let total = spec.messages()?;
    let mut rng = trial_rng(spec.master_seed, index);
    let images = (0..total).map(|_| uniform_word(spec.q, spec.n, &mut rng)).collect();
    CodeMap::from_images(spec.q, spec.k, spec.n, images)
}

/// Uniform images for the k unit vectors, extended linearly over the prime field.
pub fn sample_linear_code(spec: &RandomCodeSpec, index: u64) -> Result<CodeMap> {
    if !is_prime(spec.q) {
        return Err(Error::domain(format!("linear codes need a prime field, q = {}", spec.q)));
    }
    spec.messages()?;
    let mut rng = trial_rng(spec.master_seed, index);
    let basis = (0..spec.k).map(|_| uniform_word(spec.q, spec.n, &mut rng)).collect();
    CodeMap::from_basis(spec.q, spec.n, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_shape_and_determinism() {
        let spec = RandomCodeSpec::new(2, 1, 3, CodeKind::General, 9).unwrap();
        let a = spec.sample(4).unwrap();
        assert_eq!(a.images().len(), 2);
        assert!(a.images().iter().all(|w| w.len() == 3 && w.q() == 2));
        assert_eq!(a, spec.sample(4).unwrap());
        assert!(RandomCodeSpec::new(2, 21, 30, CodeKind::General, 0).is_err());
    }

    #[test]
    fn general_images_are_uniform() {
        let spec = RandomCodeSpec::new(2, 0, 4, CodeKind::General, 1).unwrap();
        let trials = 100_000u64;
        let mut freq = [0u64; 16];
        for t in 0..trials {
            freq[spec.sample(t).unwrap().images()[0].rank() as usize] += 1;
        }
        let (mean, sd) = (trials as f64 / 16.0, (trials as f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt());
        for f in freq {
            assert!((f as f64 - mean).abs() < 5.0 * sd, "{f}");
        }
    }

    #[test]
    fn linear_maps_are_linear() {
        let spec = RandomCodeSpec::new(3, 3, 6, CodeKind::Linear, 2).unwrap();
        for t in 0..20 {
            let c = spec.sample(t).unwrap();
            assert_eq!(c.images()[0].weight(), 0);
            for x in 0..27 {
                for y in 0..27 {
                    let sum = c.message(x).add_mod(&c.message(y)).unwrap().rank() as usize;
                    assert_eq!(c.images()[sum], c.images()[x].add_mod(&c.images()[y]).unwrap());
                }
            }
        }
        let spec = RandomCodeSpec::new(2, 2, 5, CodeKind::Linear, 3).unwrap();
        let c = spec.sample(0).unwrap();
        for a in c.images() {
            for b in c.images() {
                assert!(c.images().contains(&a.add_mod(b).unwrap()));
            }
        }
        assert!(RandomCodeSpec::new(4, 1, 2, CodeKind::Linear, 0).is_err());
    }
}
