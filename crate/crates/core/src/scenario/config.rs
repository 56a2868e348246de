//! Flat `key = value` configs.

use std::collections::BTreeMap;
use std::fmt;

use crate::numerics::{parse_rational, ExactRational};

use super::ScenarioError;

/// Names of the runnable scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Check,
    Construct,
    Bounds,
    MonteCarlo,
    VerifyFacts,
    Plot,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::Check,
        ScenarioKind::Construct,
        ScenarioKind::Bounds,
        ScenarioKind::MonteCarlo,
        ScenarioKind::VerifyFacts,
        ScenarioKind::Plot,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Check => "check",
            ScenarioKind::Construct => "construct",
            ScenarioKind::Bounds => "bounds",
            ScenarioKind::MonteCarlo => "montecarlo",
            ScenarioKind::VerifyFacts => "verify-facts",
            ScenarioKind::Plot => "plot",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ScenarioError> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ScenarioError::config("scenario", format!("unknown scenario {s:?}")))
    }

    /// Accepted keys and their defaults; `None` marks a required key.
    pub fn keys(self) -> &'static [(&'static str, Option<&'static str>)] {
        match self {
            ScenarioKind::Check => &[
                ("code", None),
                ("mode", Some("max_radius")),
                ("p", None),
                ("L", None),
                ("strategy", Some("all")),
            ],
            ScenarioKind::Construct => &[
                ("construction", None),
                ("p", Some("1/4")),
                ("lambda", Some("1/2")),
                ("L", Some("3")),
                ("n", Some("16")),
                ("size", Some("64")),
                ("trials", Some("100")),
                ("draws", Some("auto")),
                ("shell_trials", Some("64")),
            ],
            ScenarioKind::Bounds => &[
                ("bound", None),
                ("p", Some("")),
                ("L", Some("")),
                ("lambda", Some("")),
                ("gamma", Some("")),
                ("q", Some("")),
                ("eps", Some("")),
                ("z", Some("")),
                ("n", Some("")),
                ("step", Some("1000")),
            ],
            ScenarioKind::MonteCarlo => &[
                ("q", Some("2")),
                ("n", Some("8")),
                ("k", Some("auto")),
                ("gamma", Some("0.1")),
                ("kind", Some("general")),
                ("mode", Some("max_radius")),
                ("p", Some("1/4")),
                ("L", Some("2")),
                ("trials", Some("1000")),
            ],
            ScenarioKind::VerifyFacts => &[
                ("hyper_n_max", Some("30")),
                ("q_weight_max", Some("40")),
                ("binomial_n_max", Some("60")),
                ("ball_n_max", Some("60")),
                ("centroid_lists", Some("1000")),
                ("sweep_den", Some("1000")),
                ("ladder", Some("8 16 24 32 40 48 56 64 72 80 88 96 104 112 120 128")),
            ],
            ScenarioKind::Plot => &[("input", None), ("x", None), ("y", None)],
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Keys every scenario accepts.
const COMMON: [(&str, &str); 2] = [("seed", "0"), ("out", "")];

/// A fully resolved scenario: every accepted key has a value, defaults included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    values: BTreeMap<String, String>,
}

/// Raw `key = value` pairs in file order. Blank lines and `#` comments are skipped; a
/// repeated key is an error.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, ScenarioError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ScenarioError::config(format!("line {}", i + 1), format!("expected `key = value`, got {line:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(ScenarioError::config(format!("line {}", i + 1), "empty key"));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(ScenarioError::config(k, "key given twice"));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

impl ScenarioConfig {
    /// Resolves pairs against a scenario's key table. `scenario` may be absent from the
    /// pairs when `kind` is given, and must agree with it otherwise.
    pub fn resolve(kind: Option<ScenarioKind>, pairs: &[(String, String)]) -> Result<Self, ScenarioError> {
        let named = pairs
            .iter()
            .find(|(k, _)| k == "scenario")
            .map(|(_, v)| ScenarioKind::parse(v))
            .transpose()?;
        let scenario = match (kind, named) {
            (Some(a), Some(b)) if a != b => {
                return Err(ScenarioError::config("scenario", format!("config says {b}, command says {a}")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(ScenarioError::config("scenario", "missing")),
        };
        let mut values = BTreeMap::new();
        for (k, v) in pairs {
            if k == "scenario" {
                continue;
            }
            let known = scenario.keys().iter().any(|(name, _)| name == k) || COMMON.iter().any(|(name, _)| name == k);
            if !known {
                return Err(ScenarioError::config(k, format!("unknown key for scenario {scenario}")));
            }
            values.insert(k.clone(), v.clone());
        }
        for (k, default) in scenario.keys() {
            if !values.contains_key(*k) {
                let d = default.ok_or_else(|| ScenarioError::config(*k, "required key missing"))?;
                values.insert(k.to_string(), d.to_string());
            }
        }
        for (k, d) in COMMON {
            values.entry(k.to_string()).or_insert_with(|| d.to_string());
        }
        Ok(ScenarioConfig { scenario, values })
    }

    /// Parses config text, then applies overrides in order.
    pub fn from_text(
        kind: Option<ScenarioKind>,
        text: &str,
        overrides: &[(String, String)],
    ) -> Result<Self, ScenarioError> {
        let mut pairs = parse_pairs(text)?;
        for (k, v) in overrides {
            match pairs.iter_mut().find(|(seen, _)| seen == k) {
                Some(slot) => slot.1 = v.clone(),
                None => pairs.push((k.clone(), v.clone())),
            }
        }
        Self::resolve(kind, &pairs)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), ScenarioError> {
        if !self.values.contains_key(key) {
            return Err(ScenarioError::config(key, format!("unknown key for scenario {}", self.scenario)));
        }
        self.values.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    /// The resolved config in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        std::iter::once(("scenario", self.scenario.as_str()))
            .chain(self.values.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    pub fn seed(&self) -> Result<u64, ScenarioError> {
        self.parsed("seed")
    }

    pub fn out(&self) -> Option<&str> {
        Some(self.raw("out")).filter(|s| !s.is_empty())
    }

    pub(crate) fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T, ScenarioError> {
        let v = self.raw(key);
        v.parse()
            .map_err(|_| ScenarioError::config(key, format!("cannot parse {v:?}")))
    }

    /// `None` for the literal `auto`.
    pub(crate) fn parsed_auto<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ScenarioError> {
        if self.raw(key) == "auto" {
            return Ok(None);
        }
        self.parsed(key).map(Some)
    }

    pub(crate) fn rational(&self, key: &str) -> Result<ExactRational, ScenarioError> {
        parse_rational(self.raw(key)).map_err(|e| ScenarioError::config(key, e.to_string()))
    }

    /// Whitespace-separated list; empty for an empty value.
    pub(crate) fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, ScenarioError> {
        self.raw(key)
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| ScenarioError::config(key, format!("cannot parse {t:?}"))))
            .collect()
    }

    pub(crate) fn rational_list(&self, key: &str) -> Result<Vec<ExactRational>, ScenarioError> {
        self.raw(key)
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|e| ScenarioError::config(key, e.to_string())))
            .collect()
    }
}
