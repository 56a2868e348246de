//! Optimal centers for a single list.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hamming::{centroid_of, dist_stats_of, ListTuple, Word};

/// Node budget of the restricted minimax-center search.
pub const CENTER_SEARCH_BUDGET: u64 = 1 << 24;

/// Coordinates sharing one column pattern (the members' symbols at that coordinate).
struct Class {
    coords: Vec<usize>,
    /// Distinct symbols of the pattern, each with the members carrying it.
    groups: Vec<(u32, Vec<usize>)>,
}

struct Search<'a> {
    classes: &'a [Class],
    /// `rem_pair[c][(i, j)]`: coordinates in classes `c..` where members i and j differ.
    rem_pair: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
    dist: Vec<usize>,
    /// Per class, per group: how many coordinates get that group's symbol.
    choice: Vec<Vec<usize>>,
    best: usize,
    best_choice: Option<Vec<Vec<usize>>>,
    floor: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn bound_at_class(&self, c: usize) -> usize {
        let mut lb = self.dist.iter().copied().max().unwrap_or(0);
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            let total = self.dist[i] + self.dist[j] + self.rem_pair[c][k];
            lb = lb.max(total.div_ceil(2));
        }
        lb
    }

    fn class(&mut self, c: usize) -> Result<()> {
        if self.best <= self.floor {
            return Ok(());
        }
        if c == self.classes.len() {
            let m = self.dist.iter().copied().max().unwrap_or(0);
            if m < self.best {
                self.best = m;
                self.best_choice = Some(self.choice.clone());
            }
            return Ok(());
        }
        if self.bound_at_class(c) >= self.best {
            return Ok(());
        }
        let k = self.classes[c].coords.len();
        self.group(c, 0, k)
    }

    fn group(&mut self, c: usize, g: usize, left: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::over_budget(
                "restricted minimax-center search",
                self.nodes as u128,
                self.budget as u128,
            ));
        }
        let k = self.classes[c].coords.len();
        let last = g + 1 == self.classes[c].groups.len();
        // Assigning `take` coordinates to this group's symbol adds k - take to its members.
        let options: Vec<usize> = if last { vec![left] } else { (0..=left).rev().collect() };
        for take in options {
            let add = k - take;
            let members = &self.classes[c].groups[g].1;
            let over = members.iter().any(|&i| self.dist[i] + add >= self.best);
            if over {
                continue;
            }
            for &i in members {
                self.dist[i] += add;
            }
            self.choice[c][g] = take;
            let res = if last {
                self.class(c + 1)
            } else {
                self.group(c, g + 1, left - take)
            };
            let members = &self.classes[c].groups[g].1;
            for &i in members {
                self.dist[i] -= add;
            }
            res?;
            if self.best <= self.floor {
                break;
            }
        }
        Ok(())
    }
}

/// Exact minimax center over the restricted space, or `None` if no center reaches
/// radius `<= cap`. With `cap = None` the global optimum is returned.
pub(crate) fn minimax_center(members: &[Word], cap: Option<usize>, budget: u64) -> Result<Option<(Word, usize)>> {
    let l = members.len();
    let q = members[0].q();
    let n = members[0].len();
    let mut base = Word::zero_unchecked(q, n);
    let mut by_pattern: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let col: Vec<u32> = members.iter().map(|c| c.get(i)).collect();
        if col.iter().all(|&s| s == col[0]) {
            base.set_unchecked(i, col[0]);
        } else {
            by_pattern.entry(col).or_default().push(i);
        }
    }
    let mut classes: Vec<Class> = by_pattern
        .into_iter()
        .map(|(col, coords)| {
            let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (i, &s) in col.iter().enumerate() {
                groups.entry(s).or_default().push(i);
            }
            Class {
                coords,
                groups: groups.into_iter().collect(),
            }
        })
        .collect();
    classes.sort_by_key(|c| std::cmp::Reverse(c.coords.len()));

    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    let mut rem_pair = vec![vec![0usize; pairs.len()]; classes.len() + 1];
    for c in (0..classes.len()).rev() {
        let col: Vec<u32> = members.iter().map(|m| m.get(classes[c].coords[0])).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let diff = if col[i] != col[j] { classes[c].coords.len() } else { 0 };
            rem_pair[c][k] = rem_pair[c + 1][k] + diff;
        }
    }
    let floor = pairs
        .iter()
        .map(|&(i, j)| members[i].dist(&members[j]).div_ceil(2))
        .max()
        .unwrap_or(0);

    // The centroid is a feasible center and seeds the incumbent.
    let seed_center = centroid_of(members);
    let seed = dist_stats_of(&seed_center, members).max_dist;
    let target = match cap {
        Some(cap) if seed <= cap => return Ok(Some((seed_center, seed))),
        Some(cap) => cap + 1,
        None if seed <= floor => return Ok(Some((seed_center, seed))),
        None => seed,
    };
    let mut search = Search {
        classes: &classes,
        rem_pair,
        pairs,
        dist: vec![0; l],
        choice: classes.iter().map(|c| vec![0; c.groups.len()]).collect(),
        best: target,
        best_choice: None,
        floor,
        nodes: 0,
        budget,
    };
    search.class(0)?;
    let Some(choice) = search.best_choice else {
        return Ok(cap.is_none().then_some((seed_center, seed)));
    };
    let mut center = base;
    for (class, takes) in classes.iter().zip(&choice) {
        let mut coords = class.coords.iter();
        for ((symbol, _), &take) in class.groups.iter().zip(takes) {
            for &i in coords.by_ref().take(take) {
                center.set_unchecked(i, *symbol);
            }
        }
    }
    let radius = dist_stats_of(&center, members).max_dist;
    debug_assert_eq!(radius, search.best);
    Ok(Some((center, radius)))
}

/// A center minimizing the maximum distance to the list, and that radius.
///
/// The search ranges over words whose every coordinate carries a symbol some member has
/// there; moving any other coordinate to a member's symbol never increases a distance,
/// so the optimum is global. Coordinates are grouped by column pattern and the search
/// branches on how many coordinates of each group take each symbol.
pub fn optimal_max_center(list: &ListTuple) -> Result<(Word, usize)> {
    let found = minimax_center(list.members(), None, CENTER_SEARCH_BUDGET)?;
    Ok(found.expect("an unconstrained search always finds a center"))
}

/// The centroid and its distance sum, which is the minimum over all centers.
pub fn optimal_avg_center(list: &ListTuple) -> (Word, usize) {
    let c = centroid_of(list.members());
    let sum = dist_stats_of(&c, list.members()).sum_dist;
    (c, sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn list(q: u32, words: &[&str]) -> ListTuple {
        ListTuple::new(words.iter().map(|w| Word::parse(q, w).unwrap()).collect()).unwrap()
    }

    fn brute_max(members: &[Word]) -> usize {
        Word::all(members[0].q(), members[0].len())
            .unwrap()
            .map(|x| dist_stats_of(&x, members).max_dist)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(optimal_max_center(&list(2, &["000", "111"])).unwrap().1, 2);
        let (c, r) = optimal_max_center(&list(2, &["0110"])).unwrap();
        assert_eq!((c.to_text().as_str(), r), ("0110", 0));
        let (c, r) = optimal_max_center(&list(2, &["00", "01"])).unwrap();
        assert_eq!(r, 1);
        assert!(c.to_text() == "00" || c.to_text() == "01");
        let (c, s) = optimal_avg_center(&list(2, &["000", "011", "101"]));
        assert_eq!((c.to_text().as_str(), s), ("001", 3));
        assert_eq!(optimal_avg_center(&list(2, &["00", "11"])).1, 2);
    }

    #[test]
    fn cap_decides_feasibility() {
        let l = list(2, &["000", "111"]);
        assert!(minimax_center(l.members(), Some(1), 1000).unwrap().is_none());
        assert_eq!(minimax_center(l.members(), Some(2), 1000).unwrap().unwrap().1, 2);
    }

    proptest! {
        #[test]
        fn matches_exhaustive(q in 2u32..5, n in 1usize..7, seeds in proptest::collection::vec(any::<u64>(), 1..6)) {
            let total = (q as u64).pow(n as u32);
            let mut words: Vec<Word> = seeds.iter().map(|s| Word::from_rank(q, n, (*s % total) as u128).unwrap()).collect();
            words.sort();
            words.dedup();
            let (c, r) = minimax_center(&words, None, CENTER_SEARCH_BUDGET).unwrap().unwrap();
            prop_assert_eq!(r, brute_max(&words));
            prop_assert_eq!(dist_stats_of(&c, &words).max_dist, r);
        }
    }
}
