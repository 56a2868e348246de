use std::collections::HashSet;

use crate::error::{Error, Result};

use super::word::Word;

/// Distinct words of a common length and alphabet, optionally tagged constant-weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: u32,
    n: usize,
    words: Vec<Word>,
    weight_tag: Option<usize>,
}

impl Code {
    pub fn new(q: u32, n: usize, words: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if w.q() != q || w.len() != n {
                return Err(Error::shape(format!(
                    "codeword {w} has shape (q={}, n={}), code is (q={q}, n={n})",
                    w.q(),
                    w.len()
                )));
            }
            if !seen.insert(w) {
                return Err(Error::domain(format!("duplicate codeword {w}")));
            }
        }
        Ok(Code {
            q,
            n,
            words,
            weight_tag: None,
        })
    }

    /// Builds a code and asserts every word has weight exactly `w`.
    pub fn constant_weight(q: u32, n: usize, words: Vec<Word>, w: usize) -> Result<Self> {
        Code::new(q, n, words)?.with_weight_tag(w)
    }

    pub fn with_weight_tag(mut self, w: usize) -> Result<Self> {
        if w > self.n {
            return Err(Error::domain(format!("weight tag {w} exceeds n={}", self.n)));
        }
        if let Some(c) = self.words.iter().find(|c| c.weight() != w) {
            return Err(Error::domain(format!(
                "codeword {c} has weight {}, weight tag is {w}",
                c.weight()
            )));
        }
        self.weight_tag = Some(w);
        Ok(self)
    }

    /// Every word of length n and weight w over {0, 1}.
    pub fn all_of_weight(n: usize, w: usize) -> Result<Self> {
        let words = super::combinations(n, w)
            .map(|s| Word::indicator(n, &s))
            .collect::<Result<Vec<_>>>()?;
        Code::constant_weight(2, n, words, w)
    }

    /// The whole space [q]^n.
    pub fn full_space(q: u32, n: usize) -> Result<Self> {
        Code::new(q, n, Word::all(q, n)?.collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn weight_tag(&self) -> Option<usize> {
        self.weight_tag
    }

    pub(crate) fn require_weight_tag(&self) -> Result<usize> {
        self.weight_tag
            .ok_or_else(|| Error::domain("construction requires a constant-weight code"))
    }

    pub(crate) fn require_binary(&self) -> Result<()> {
        if self.q != 2 {
            return Err(Error::domain(format!("construction requires q=2, got q={}", self.q)));
        }
        Ok(())
    }

    pub(crate) fn check_word(&self, x: &Word) -> Result<()> {
        if x.q() != self.q || x.len() != self.n {
            return Err(Error::shape(format!(
                "word {x} has shape (q={}, n={}), code is (q={}, n={})",
                x.q(),
                x.len(),
                self.q,
                self.n
            )));
        }
        Ok(())
    }

    /// Replaces every codeword c by c - x (mod q). The weight tag is dropped.
    pub fn translate(&self, x: &Word) -> Result<Code> {
        self.check_word(x)?;
        let words = self
            .words
            .iter()
            .map(|c| c.sub_mod(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Code {
            q: self.q,
            n: self.n,
            words,
            weight_tag: None,
        })
    }

    /// Codewords within distance `radius` of `x`.
    pub fn ball_members(&self, x: &Word, radius: usize) -> Vec<&Word> {
        self.words.iter().filter(|c| x.dist(c) <= radius).collect()
    }
}

/// A nonempty list of distinct words of a common shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListTuple {
    members: Vec<Word>,
}

impl ListTuple {
    pub fn new(members: Vec<Word>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::domain("list must be nonempty"))?;
        let mut seen = HashSet::with_capacity(members.len());
        for m in &members {
            first.check_shape(m)?;
            if !seen.insert(m) {
                return Err(Error::domain(format!("duplicate list member {m}")));
            }
        }
        Ok(ListTuple { members })
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn q(&self) -> u32 {
        self.members[0].q()
    }

    pub fn n(&self) -> usize {
        self.members[0].len()
    }
}

/// Maximum and summed distance of a list from a center. The sum stays an integer;
/// the average is never formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistStats {
    pub max_dist: usize,
    pub sum_dist: usize,
}

impl DistStats {
    /// Exact test of `sum / len <= radius`.
    pub fn avg_within(&self, len: usize, radius: usize) -> bool {
        self.sum_dist <= radius * len
    }
}

pub fn dist_stats(x: &Word, list: &ListTuple) -> Result<DistStats> {
    x.check_shape(&list.members[0])?;
    Ok(dist_stats_of(x, list.members()))
}

pub(crate) fn dist_stats_of<'a>(x: &Word, members: impl IntoIterator<Item = &'a Word>) -> DistStats {
    members.into_iter().fold(
        DistStats {
            max_dist: 0,
            sum_dist: 0,
        },
        |acc, c| {
            let d = x.dist(c);
            DistStats {
                max_dist: acc.max_dist.max(d),
                sum_dist: acc.sum_dist + d,
            }
        },
    )
}

/// Coordinatewise plurality word; ties go to the smallest symbol.
pub fn centroid(list: &ListTuple) -> Word {
    centroid_of(list.members())
}

pub(crate) fn centroid_of(members: &[Word]) -> Word {
    let q = members[0].q();
    let n = members[0].len();
    let mut out = Word::zero_unchecked(q, n);
    if q == 2 {
        for i in 0..n {
            let ones = members.iter().filter(|c| c.get(i) == 1).count();
            if 2 * ones > members.len() {
                out.set_unchecked(i, 1);
            }
        }
        return out;
    }
    let mut counts = vec![0usize; q as usize];
    for i in 0..n {
        counts.iter_mut().for_each(|c| *c = 0);
        for c in members {
            counts[c.get(i) as usize] += 1;
        }
        // max_by_key keeps the last maximum, so scan in reverse to prefer small symbols.
        let best = (0..q as usize).rev().max_by_key(|&s| counts[s]).unwrap();
        out.set_unchecked(i, best as u32);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u32, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    fn list(q: u32, items: &[&str]) -> ListTuple {
        ListTuple::new(items.iter().map(|s| w(q, s)).collect()).unwrap()
    }

    fn brute_min_sum(l: &ListTuple) -> usize {
        Word::all(l.q(), l.n())
            .unwrap()
            .map(|x| dist_stats(&x, l).unwrap().sum_dist)
            .min()
            .unwrap()
    }

    #[test]
    fn dist_stats_examples() {
        let s = dist_stats(&w(2, "000"), &list(2, &["000"])).unwrap();
        assert_eq!((s.max_dist, s.sum_dist), (0, 0));
        let s = dist_stats(&w(2, "001"), &list(2, &["000", "011", "101"])).unwrap();
        assert_eq!((s.max_dist, s.sum_dist), (1, 3));
        let s = dist_stats(&w(2, "000"), &list(2, &["000", "111"])).unwrap();
        assert_eq!((s.max_dist, s.sum_dist), (3, 3));
    }

    #[test]
    fn empty_list_rejected() {
        assert!(matches!(ListTuple::new(vec![]), Err(Error::Domain(_))));
    }

    #[test]
    fn centroid_examples() {
        let l = list(2, &["000", "011", "101"]);
        let c = centroid(&l);
        assert_eq!(c, w(2, "001"));
        assert_eq!(dist_stats(&c, &l).unwrap().sum_dist, 3);
        assert_eq!(brute_min_sum(&l), 3);

        let single = list(3, &["120"]);
        assert_eq!(centroid(&single), w(3, "120"));

        let tie = list(2, &["00", "11"]);
        assert_eq!(centroid(&tie), w(2, "00"));
        assert_eq!(brute_min_sum(&tie), 2);
    }

    #[test]
    fn qary_centroid_tie_break() {
        let l = list(3, &["2", "1"]);
        assert_eq!(centroid(&l), w(3, "1"));
    }

    #[test]
    fn translate_examples() {
        let code = Code::new(2, 3, vec![w(2, "011"), w(2, "101")]).unwrap();
        let t = code.translate(&w(2, "001")).unwrap();
        assert_eq!(t.words(), &[w(2, "010"), w(2, "100")]);
        assert_eq!(code.translate(&w(2, "000")).unwrap().words(), code.words());
        assert!(code.translate(&w(2, "00")).is_err());
    }

    #[test]
    fn code_invariants() {
        assert!(Code::new(2, 2, vec![w(2, "01"), w(2, "01")]).is_err());
        assert!(Code::new(2, 2, vec![w(2, "01"), w(2, "011")]).is_err());
        assert!(Code::constant_weight(2, 3, vec![w(2, "011"), w(2, "001")], 2).is_err());
        let c = Code::all_of_weight(4, 2).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.weight_tag(), Some(2));
    }
}
