//! Arithmetic over prime fields: primality, inverses and incremental row reduction.

use crate::hamming::Word;

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn inverse(a: u32, q: u32) -> u32 {
    // Fermat: a^(q-2).
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Row-reduced basis of a growing span over F_q.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    q: u32,
    /// Rows normalized to 1 at their pivot column, with distinct pivots.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub(crate) fn new(q: u32) -> Self {
        Echelon { q, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let q = self.q;
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + q - f * r % q) % q;
                }
            }
        }
    }

    /// Adds `v` to the span; returns false if it already lay in it.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inverse(v[pivot], self.q);
        for x in v.iter_mut() {
            *x = *x * inv % self.q;
        }
        // Keep earlier rows reduced against the new pivot.
        for (_, row) in self.rows.iter_mut() {
            let f = row[pivot];
            if f != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + self.q - f * r % self.q) % self.q;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Rank over F_q of a list of words; q must be prime.
pub fn rank_mod_q(words: &[Word]) -> usize {
    let Some(first) = words.first() else { return 0 };
    let mut e = Echelon::new(first.q());
    for w in words {
        e.insert(&w.symbols());
    }
    e.dim()
}
