//! Whitespace-separated column projections of scenario CSVs.

use std::cmp::Ordering;
use std::time::Duration;

use crate::numerics::{parse_rational, rational_to_f64};

use super::{ScenarioError, ScenarioReport};

/// Reads a CSV written by [`ScenarioReport::to_csv`]. Comment lines of the form
/// `# key = value` become the config echo; budget lines are dropped.
pub fn parse_report(text: &str) -> Result<ScenarioReport, ScenarioError> {
    let mut config = Vec::new();
    let mut header = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(c) = line.strip_prefix('#') {
            if let Some((k, v)) = c.split_once('=') {
                let k = k.trim();
                if !k.starts_with("budget ") {
                    config.push((k.to_string(), v.trim().to_string()));
                }
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(line.to_string());
        } else {
            rows.push(line.to_string());
        }
    }
    Ok(ScenarioReport {
        config,
        budgets: Vec::new(),
        header: header.ok_or_else(|| ScenarioError::config("input", "no header line"))?,
        rows,
        failures: 0,
        wall_clock: Duration::ZERO,
    })
}

/// Numeric value of a CSV token: decimals, exponents and `a/b` rationals.
fn numeric(token: &str) -> Option<f64> {
    token
        .parse::<f64>()
        .ok()
        .or_else(|| parse_rational(token).ok().map(|r| rational_to_f64(&r)))
        .filter(|v| !v.is_nan())
}

/// A y column, optionally wrapped as `log2(name)` or `log10(name)`.
struct YColumn {
    index: usize,
    log: Option<f64>,
}

fn resolve(header: &[&str], spec: &str) -> Result<YColumn, ScenarioError> {
    let (name, log) = match spec.split_once('(') {
        Some((f, rest)) if rest.ends_with(')') => {
            let base = match f {
                "log2" => 2.0,
                "log10" => 10.0,
                _ => return Err(ScenarioError::config("y", format!("unknown transform {f:?}"))),
            };
            (&rest[..rest.len() - 1], Some(base))
        }
        _ => (spec, None),
    };
    let index = header
        .iter()
        .position(|h| *h == name)
        .ok_or_else(|| ScenarioError::config("y", format!("no column named {name:?}")))?;
    Ok(YColumn { index, log })
}

/// Rows `x y1 y2 ...` sorted by x (non-numeric x last, ties in input order). Tokens that
/// are not numbers pass through; a log of a nonpositive or missing value becomes `NA`.
pub fn emit_plotdata(report: &ScenarioReport, x: &str, ys: &[&str]) -> Result<String, ScenarioError> {
    let header: Vec<&str> = report.header.split(',').collect();
    let xi = header
        .iter()
        .position(|h| *h == x)
        .ok_or_else(|| ScenarioError::config("x", format!("no column named {x:?}")))?;
    if ys.is_empty() {
        return Err(ScenarioError::config("y", "at least one column needed"));
    }
    let cols = ys.iter().map(|y| resolve(&header, y)).collect::<Result<Vec<_>, _>>()?;
    let mut lines: Vec<(Option<f64>, String)> = Vec::with_capacity(report.rows.len());
    for row in &report.rows {
        let fields: Vec<&str> = row.split(',').collect();
        let get = |i: usize| fields.get(i).copied().unwrap_or("NA");
        let mut out = vec![get(xi).to_string()];
        for c in &cols {
            let token = get(c.index);
            out.push(match c.log {
                None => token.to_string(),
                Some(base) => match numeric(token) {
                    Some(v) if v > 0.0 => (v.ln() / f64::ln(base)).to_string(),
                    _ => "NA".to_string(),
                },
            });
        }
        lines.push((numeric(get(xi)), out.join(" ")));
    }
    lines.sort_by(|a, b| match (a.0, b.0) {
        (Some(u), Some(v)) => u.partial_cmp(&v).unwrap_or(Ordering::Equal),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    });
    let mut text = String::new();
    for (_, l) in lines {
        text.push_str(&l);
        text.push('\n');
    }
    Ok(text)
}
