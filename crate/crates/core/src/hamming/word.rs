use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Largest supported alphabet (one byte per symbol).
pub const MAX_Q: u32 = 256;

pub(crate) type Limbs = SmallVec<[u64; 2]>;

/// Bits used per symbol: 1 for binary, 4 for q <= 16, 8 otherwise.
pub(crate) fn symbol_width(q: u32) -> u32 {
    match q {
        2 => 1,
        3..=16 => 4,
        _ => 8,
    }
}

fn check_alphabet(q: u32) -> Result<()> {
    if !(2..=MAX_Q).contains(&q) {
        return Err(Error::domain(format!("alphabet size q={q} outside [2, {MAX_Q}]")));
    }
    Ok(())
}

fn limb_count(n: usize, width: u32) -> usize {
    (n * width as usize).div_ceil(64).max(1)
}

// Collapses every `width`-bit lane of `x` to its lowest bit: the lane is nonzero iff that bit is set.
#[inline]
fn nonzero_lanes(x: u64, width: u32) -> u64 {
    match width {
        1 => x,
        4 => (x | (x >> 1) | (x >> 2) | (x >> 3)) & 0x1111_1111_1111_1111,
        _ => {
            let y = x | (x >> 1);
            let y = y | (y >> 2);
            (y | (y >> 4)) & 0x0101_0101_0101_0101
        }
    }
}

/// A length-n string over the alphabet {0, ..., q-1}, packed into machine words.
#[derive(Clone)]
pub struct Word {
    q: u32,
    n: usize,
    limbs: Limbs,
}

impl Word {
    /// The all-zero word.
    pub fn zero(q: u32, n: usize) -> Result<Self> {
        check_alphabet(q)?;
        Ok(Self::zero_unchecked(q, n))
    }

    pub(crate) fn zero_unchecked(q: u32, n: usize) -> Self {
        let width = symbol_width(q);
        Word {
            q,
            n,
            limbs: smallvec![0; limb_count(n, width)],
        }
    }

    /// Builds a word from explicit symbols.
    pub fn new(q: u32, symbols: &[u32]) -> Result<Self> {
        check_alphabet(q)?;
        let mut w = Self::zero_unchecked(q, symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            if s >= q {
                return Err(Error::domain(format!(
                    "symbol {s} at coordinate {} not in [0, {q})",
                    i + 1
                )));
            }
            w.set_unchecked(i, s);
        }
        Ok(w)
    }

    /// Binary word with ones exactly at the given (0-indexed) coordinates.
    pub fn indicator(n: usize, support: &[usize]) -> Result<Self> {
        let mut w = Self::zero_unchecked(2, n);
        for &i in support {
            if i >= n {
                return Err(Error::shape(format!("index {i} out of range for n={n}")));
            }
            w.set_unchecked(i, 1);
        }
        Ok(w)
    }

    /// Parses symbols written as `0-9a-f` (one character per coordinate).
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|ch| {
                ch.to_digit(16)
                    .ok_or_else(|| Error::parse(format!("invalid symbol {ch:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, &symbols)
    }

    /// Base-q digits of `rank`, least significant digit at coordinate 0.
    pub fn from_rank(q: u32, n: usize, mut rank: u128) -> Result<Self> {
        check_alphabet(q)?;
        let mut w = Self::zero_unchecked(q, n);
        for i in 0..n {
            w.set_unchecked(i, (rank % q as u128) as u32);
            rank /= q as u128;
        }
        if rank != 0 {
            return Err(Error::domain(format!("rank exceeds q^n for q={q}, n={n}")));
        }
        Ok(w)
    }

    /// Inverse of [`Word::from_rank`].
    pub fn rank(&self) -> u128 {
        (0..self.n)
            .rev()
            .fold(0u128, |acc, i| acc * self.q as u128 + self.get(i) as u128)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub(crate) fn width(&self) -> u32 {
        symbol_width(self.q)
    }

    #[inline]
    fn locate(&self, i: usize) -> (usize, u32, u64) {
        let width = self.width();
        let bit = i * width as usize;
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        (bit / 64, (bit % 64) as u32, mask)
    }

    /// Symbol at 0-indexed coordinate `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.n);
        let (limb, shift, mask) = self.locate(i);
        ((self.limbs[limb] >> shift) & mask) as u32
    }

    pub fn set(&mut self, i: usize, symbol: u32) -> Result<()> {
        if i >= self.n {
            return Err(Error::shape(format!("index {i} out of range for n={}", self.n)));
        }
        if symbol >= self.q {
            return Err(Error::domain(format!("symbol {symbol} not in [0, {})", self.q)));
        }
        self.set_unchecked(i, symbol);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_unchecked(&mut self, i: usize, symbol: u32) {
        let (limb, shift, mask) = self.locate(i);
        self.limbs[limb] = (self.limbs[limb] & !(mask << shift)) | ((symbol as u64) << shift);
    }

    pub fn symbols(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i)).collect()
    }

    pub fn same_shape(&self, other: &Word) -> bool {
        self.q == other.q && self.n == other.n
    }

    pub(crate) fn check_shape(&self, other: &Word) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::shape(format!(
                "word shapes differ: (q={}, n={}) vs (q={}, n={})",
                self.q, self.n, other.q, other.n
            )))
        }
    }

    /// Hamming distance; shapes must match.
    pub fn distance(&self, other: &Word) -> Result<usize> {
        self.check_shape(other)?;
        Ok(self.dist(other))
    }

    /// Hamming distance without the shape check.
    #[inline]
    pub(crate) fn dist(&self, other: &Word) -> usize {
        let width = self.width();
        self.limbs
            .iter()
            .zip(other.limbs.iter())
            .map(|(a, b)| nonzero_lanes(a ^ b, width).count_ones() as usize)
            .sum()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        let width = self.width();
        self.limbs
            .iter()
            .map(|a| nonzero_lanes(*a, width).count_ones() as usize)
            .sum()
    }

    /// 0-indexed coordinates of nonzero symbols, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i) != 0).collect()
    }

    /// Restriction to the coordinates in `indices`, in the order given.
    pub fn restrict(&self, indices: &[usize]) -> Result<Word> {
        let mut out = Word::zero_unchecked(self.q, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            if i >= self.n {
                return Err(Error::shape(format!("index {i} out of range for n={}", self.n)));
            }
            out.set_unchecked(j, self.get(i));
        }
        Ok(out)
    }

    /// Weight of the restriction to `indices`.
    pub fn weight_on(&self, indices: &[usize]) -> usize {
        indices.iter().filter(|&&i| self.get(i) != 0).count()
    }

    /// Coordinatewise `self - other (mod q)`.
    pub fn sub_mod(&self, other: &Word) -> Result<Word> {
        self.check_shape(other)?;
        if self.q == 2 {
            return Ok(self.xor(other));
        }
        let mut out = Word::zero_unchecked(self.q, self.n);
        for i in 0..self.n {
            out.set_unchecked(i, (self.get(i) + self.q - other.get(i)) % self.q);
        }
        Ok(out)
    }

    /// Coordinatewise `self + other (mod q)`.
    pub fn add_mod(&self, other: &Word) -> Result<Word> {
        self.check_shape(other)?;
        if self.q == 2 {
            return Ok(self.xor(other));
        }
        let mut out = Word::zero_unchecked(self.q, self.n);
        for i in 0..self.n {
            out.set_unchecked(i, (self.get(i) + other.get(i)) % self.q);
        }
        Ok(out)
    }

    /// Coordinatewise `scalar * self (mod q)`.
    pub fn scale_mod(&self, scalar: u32) -> Word {
        let scalar = scalar % self.q;
        let mut out = Word::zero_unchecked(self.q, self.n);
        if scalar == 0 {
            return out;
        }
        for i in 0..self.n {
            out.set_unchecked(i, (self.get(i) * scalar) % self.q);
        }
        out
    }

    /// `self += scalar * other (mod q)`, shapes assumed equal.
    pub(crate) fn add_scaled_assign(&mut self, other: &Word, scalar: u32) {
        let scalar = scalar % self.q;
        if scalar == 0 {
            return;
        }
        if self.q == 2 {
            for (a, b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
                *a ^= b;
            }
            return;
        }
        for i in 0..self.n {
            let v = (self.get(i) + scalar * other.get(i)) % self.q;
            self.set_unchecked(i, v);
        }
    }

    fn xor(&self, other: &Word) -> Word {
        let limbs = self
            .limbs
            .iter()
            .zip(other.limbs.iter())
            .map(|(a, b)| a ^ b)
            .collect();
        Word {
            q: self.q,
            n: self.n,
            limbs,
        }
    }

    /// Advances to the next word in rank order. Returns `false` after wrapping to zero.
    pub fn advance(&mut self) -> bool {
        if self.q == 2 && self.n <= 64 && self.n > 0 {
            let top = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
            let v = self.limbs[0];
            if v == top {
                self.limbs[0] = 0;
                return false;
            }
            self.limbs[0] = v + 1;
            return true;
        }
        for i in 0..self.n {
            let s = self.get(i) + 1;
            if s < self.q {
                self.set_unchecked(i, s);
                return true;
            }
            self.set_unchecked(i, 0);
        }
        false
    }

    /// All q^n words in rank order.
    pub fn all(q: u32, n: usize) -> Result<AllWords> {
        check_alphabet(q)?;
        Ok(AllWords {
            next: Some(Word::zero_unchecked(q, n)),
        })
    }

    /// Renders the word with `0-9a-f` symbols (q <= 16) or dot-separated decimals.
    pub fn to_text(&self) -> String {
        if self.q <= 16 {
            self.symbols()
                .iter()
                .map(|&s| char::from_digit(s, 16).unwrap())
                .collect()
        } else {
            self.symbols()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.limbs == other.limbs
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.q.hash(state);
        self.n.hash(state);
        self.limbs.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by (q, n) and then lexicographically by symbols.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.q, self.n)
            .cmp(&(other.q, other.n))
            .then_with(|| self.symbols().cmp(&other.symbols()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(q={}, {})", self.q, self.to_text())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub struct AllWords {
    next: Option<Word>,
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.advance() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// A word over {0, ..., q-1} plus the erasure symbol `?`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ErasedWord {
    values: Word,
    revealed: Vec<bool>,
}

impl ErasedWord {
    /// `None` marks an erased coordinate.
    pub fn new(q: u32, symbols: &[Option<u32>]) -> Result<Self> {
        let values: Vec<u32> = symbols.iter().map(|s| s.unwrap_or(0)).collect();
        Ok(ErasedWord {
            values: Word::new(q, &values)?,
            revealed: symbols.iter().map(Option::is_some).collect(),
        })
    }

    /// Reveals `word` on `support` (0-indexed) and erases everything else.
    pub fn from_support(word: &Word, support: &[usize]) -> Result<Self> {
        let mut values = Word::zero_unchecked(word.q(), word.len());
        let mut revealed = vec![false; word.len()];
        for &i in support {
            if i >= word.len() {
                return Err(Error::shape(format!("index {i} out of range for n={}", word.len())));
            }
            values.set_unchecked(i, word.get(i));
            revealed[i] = true;
        }
        Ok(ErasedWord { values, revealed })
    }

    pub fn parse(q: u32, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|ch| match ch {
                '?' => Ok(None),
                _ => ch
                    .to_digit(16)
                    .map(Some)
                    .ok_or_else(|| Error::parse(format!("invalid symbol {ch:?} in {text:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, &symbols)
    }

    pub fn q(&self) -> u32 {
        self.values.q()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.revealed[i].then(|| self.values.get(i))
    }

    /// Supp*(a): the non-erased coordinates, 0-indexed.
    pub fn revealed_support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.revealed[i]).collect()
    }

    /// True iff `word` matches every non-erased coordinate.
    pub fn agrees(&self, word: &Word) -> Result<bool> {
        if word.q() != self.q() || word.len() != self.len() {
            return Err(Error::shape(format!(
                "erased word (q={}, n={}) vs word (q={}, n={})",
                self.q(),
                self.len(),
                word.q(),
                word.len()
            )));
        }
        Ok((0..self.len()).all(|i| !self.revealed[i] || self.values.get(i) == word.get(i)))
    }

    pub fn to_text(&self) -> String {
        (0..self.len())
            .map(|i| match self.get(i) {
                Some(s) if self.q() <= 16 => char::from_digit(s, 16).unwrap(),
                Some(_) => '*',
                None => '?',
            })
            .collect()
    }
}

impl fmt::Debug for ErasedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ErasedWord(q={}, {})", self.q(), self.to_text())
    }
}

impl fmt::Display for ErasedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u32, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(w(2, "000").distance(&w(2, "000")).unwrap(), 0);
        assert_eq!(w(2, "0011").distance(&w(2, "0101")).unwrap(), 2);
        assert_eq!(w(3, "012").distance(&w(3, "021")).unwrap(), 2);
    }

    #[test]
    fn distance_shape_mismatch() {
        assert!(matches!(w(2, "01").distance(&w(2, "011")), Err(Error::Shape(_))));
        assert!(matches!(w(2, "01").distance(&w(3, "01")), Err(Error::Shape(_))));
    }

    #[test]
    fn packed_layouts_agree_with_symbolwise_count() {
        for q in [2u32, 3, 7, 16, 17, 200] {
            let n = 70;
            let a: Vec<u32> = (0..n).map(|i| (i * 7 + 3) as u32 % q).collect();
            let b: Vec<u32> = (0..n).map(|i| (i * 5 + 1) as u32 % q).collect();
            let expected = a.iter().zip(&b).filter(|(x, y)| x != y).count();
            let wa = Word::new(q, &a).unwrap();
            let wb = Word::new(q, &b).unwrap();
            assert_eq!(wa.dist(&wb), expected, "q={q}");
            assert_eq!(wa.symbols(), a);
            assert_eq!(wa.weight(), a.iter().filter(|&&s| s != 0).count());
        }
    }

    #[test]
    fn weight_and_support() {
        assert_eq!(w(2, "0000").weight(), 0);
        assert!(w(2, "0000").support().is_empty());
        assert_eq!(w(2, "0110").support(), vec![1, 2]);
        assert_eq!(w(3, "102").support(), vec![0, 2]);
        assert_eq!(w(3, "102").weight(), 2);
    }

    #[test]
    fn restrict_examples() {
        let x = w(2, "0110");
        assert_eq!(x.restrict(&[0, 1]).unwrap(), w(2, "01"));
        assert_eq!(x.restrict(&[0, 1, 2, 3]).unwrap(), x);
        let empty = x.restrict(&[]).unwrap();
        assert_eq!(empty.len(), 0);
        assert!(matches!(x.restrict(&[4]), Err(Error::Shape(_))));
    }

    #[test]
    fn rank_round_trip_and_advance() {
        let mut x = Word::zero(3, 4).unwrap();
        for r in 0..81u128 {
            assert_eq!(x.rank(), r);
            assert_eq!(Word::from_rank(3, 4, r).unwrap(), x);
            let more = x.advance();
            assert_eq!(more, r < 80);
        }
        assert_eq!(Word::all(2, 3).unwrap().count(), 8);
    }

    #[test]
    fn modular_arithmetic() {
        let a = w(5, "0123");
        let b = w(5, "4441");
        assert_eq!(a.sub_mod(&b).unwrap(), w(5, "1232"));
        assert_eq!(a.add_mod(&b).unwrap(), w(5, "4014"));
        assert_eq!(a.scale_mod(2), w(5, "0241"));
        assert_eq!(w(2, "011").sub_mod(&w(2, "001")).unwrap(), w(2, "010"));
    }

    #[test]
    fn agreement() {
        let a = ErasedWord::parse(2, "1?").unwrap();
        assert!(a.agrees(&w(2, "10")).unwrap());
        assert!(!a.agrees(&w(2, "00")).unwrap());
        let all_erased = ErasedWord::parse(2, "??").unwrap();
        assert!(all_erased.revealed_support().is_empty());
        for c in Word::all(2, 2).unwrap() {
            assert!(all_erased.agrees(&c).unwrap());
        }
        assert!(a.agrees(&w(2, "101")).is_err());
    }

    #[test]
    fn rejects_bad_symbols() {
        assert!(Word::new(2, &[0, 2]).is_err());
        assert!(Word::parse(3, "0x").is_err());
        assert!(Word::zero(1, 3).is_err());
    }
}
