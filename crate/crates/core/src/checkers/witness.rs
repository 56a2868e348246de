//! Violation witnesses and their text form.
//!
//! ```text
//! #witness mode=max_radius q=2 n=3 stat=1
//! center 001
//! list 000
//! list 011
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::hamming::{dist_stats_of, ErasedWord, ListTuple, Word};

use super::{DecodabilityQuery, Mode};

/// The center of a witness: a word for the error modes, an erased word for erasures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Word(Word),
    Erased(ErasedWord),
}

impl Center {
    pub fn to_text(&self) -> String {
        match self {
            Center::Word(w) => w.to_text(),
            Center::Erased(a) => a.to_text(),
        }
    }
}

/// A center and a list violating the query's threshold.
///
/// `stat` is the maximum distance (max-radius mode), the exact distance sum (average
/// mode), or the number of list members agreeing with the center (erasure mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub mode: Mode,
    pub center: Center,
    pub list: ListTuple,
    pub stat: usize,
}

impl Witness {
    /// Recomputes the statistic from the center and list.
    pub fn recompute_stat(&self) -> Result<usize> {
        let members = self.list.members();
        match (&self.center, self.mode) {
            (Center::Word(x), Mode::MaxRadius | Mode::AvgRadius) => {
                x.check_shape(&members[0])?;
                let s = dist_stats_of(x, members);
                Ok(if self.mode == Mode::MaxRadius {
                    s.max_dist
                } else {
                    s.sum_dist
                })
            }
            (Center::Erased(a), Mode::Erasure) => {
                let mut count = 0;
                for c in members {
                    if a.agrees(c)? {
                        count += 1;
                    }
                }
                Ok(count)
            }
            _ => Err(Error::domain("witness center does not match its mode")),
        }
    }

    /// Checks that the stored statistic is reproduced, that the list lies in the code,
    /// has the query's size, and violates the query's threshold.
    pub fn verify(&self, query: &DecodabilityQuery) -> Result<()> {
        let bad = |msg: String| Err(Error::Inconsistent(msg));
        if self.mode != query.mode() {
            return bad(format!("witness mode {} differs from query mode {}", self.mode, query.mode()));
        }
        if self.list.len() != query.list_size() {
            return bad(format!(
                "witness list has {} members, query list size is {}",
                self.list.len(),
                query.list_size()
            ));
        }
        for c in self.list.members() {
            if !query.code().words().contains(c) {
                return bad(format!("witness member {c} is not a codeword"));
            }
        }
        let stat = self.recompute_stat()?;
        if stat != self.stat {
            return bad(format!("stored stat {} but recomputed {stat}", self.stat));
        }
        let violates = match self.mode {
            Mode::MaxRadius => stat <= query.radius(),
            Mode::AvgRadius => stat <= query.radius() * query.list_size(),
            Mode::Erasure => {
                let Center::Erased(a) = &self.center else { unreachable!() };
                a.revealed_support().len() == query.support_size() && stat == self.list.len()
            }
        };
        if !violates {
            return bad(format!("stat {stat} does not violate the {} threshold", self.mode));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let m = &self.list.members()[0];
        let mut out = format!(
            "#witness mode={} q={} n={} stat={}\ncenter {}\n",
            self.mode,
            m.q(),
            m.len(),
            self.stat,
            self.center.to_text()
        );
        for c in self.list.members() {
            out.push_str("list ");
            out.push_str(&c.to_text());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Witness> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::parse("empty witness"))?;
        let fields = header
            .strip_prefix("#witness")
            .ok_or_else(|| Error::parse(format!("expected #witness header, got {header:?}")))?;
        let (mut mode, mut q, mut n, mut stat) = (None, None, None, None);
        for kv in fields.split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("malformed header field {kv:?}")))?;
            let num = || v.parse::<usize>().map_err(|_| Error::parse(format!("bad value in {kv:?}")));
            match k {
                "mode" => mode = Some(Mode::parse(v)?),
                "q" => q = Some(num()? as u32),
                "n" => n = Some(num()?),
                "stat" => stat = Some(num()?),
                _ => return Err(Error::parse(format!("unknown header field {k:?}"))),
            }
        }
        let missing = |f: &str| Error::parse(format!("witness header lacks {f}"));
        let mode = mode.ok_or_else(|| missing("mode"))?;
        let q = q.ok_or_else(|| missing("q"))?;
        let n = n.ok_or_else(|| missing("n"))?;
        let stat = stat.ok_or_else(|| missing("stat"))?;
        let mut center = None;
        let mut members = Vec::new();
        for line in lines {
            if let Some(w) = line.strip_prefix("center ") {
                let w = w.trim();
                center = Some(match mode {
                    Mode::Erasure => Center::Erased(ErasedWord::parse(q, w)?),
                    _ => Center::Word(Word::parse(q, w)?),
                });
            } else if let Some(w) = line.strip_prefix("list ") {
                members.push(Word::parse(q, w.trim())?);
            } else if !line.starts_with('#') {
                return Err(Error::parse(format!("unexpected witness line {line:?}")));
            }
        }
        let center = center.ok_or_else(|| missing("a center line"))?;
        let len = match &center {
            Center::Word(w) => w.len(),
            Center::Erased(a) => a.len(),
        };
        if len != n || members.iter().any(|m| m.len() != n) {
            return Err(Error::shape(format!("witness words must have length n={n}")));
        }
        Ok(Witness {
            mode,
            center,
            list: ListTuple::new(members)?,
            stat,
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
