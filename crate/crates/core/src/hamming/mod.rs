//! Words, erased words, codes, and the list-distance statistics.
//!
//! Coordinates are 0-indexed in this API and 1-indexed in every text format.

mod code;
mod format;
mod word;

pub use code::{centroid, dist_stats, Code, DistStats, ListTuple};
pub use format::{parse_code, write_code};
pub use word::{AllWords, ErasedWord, Word, MAX_Q};

pub(crate) use code::{centroid_of, dist_stats_of};

/// Hamming distance between two words of the same shape.
pub fn distance(x: &Word, y: &Word) -> crate::Result<usize> {
    x.distance(y)
}

/// Weight and 0-indexed support of `x`.
pub fn weight_support(x: &Word) -> (usize, Vec<usize>) {
    let support = x.support();
    (support.len(), support)
}

/// k-subsets of {0, ..., n-1} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: (k <= n).then(|| (0..k).collect()),
    }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(5, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 4).count(), 0);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
        assert_eq!(
            combinations(4, 2).collect::<Vec<_>>(),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn weight_support_examples() {
        assert_eq!(weight_support(&Word::parse(2, "0000").unwrap()), (0, vec![]));
        assert_eq!(weight_support(&Word::parse(2, "0110").unwrap()), (2, vec![1, 2]));
        assert_eq!(weight_support(&Word::parse(3, "102").unwrap()), (2, vec![0, 2]));
    }
}
