//! Scenario runner: resolves a config, runs one experiment and renders a CSV whose
//! comment header echoes the resolved config.

mod config;
mod plot;

use std::fmt;
use std::time::{Duration, Instant};

use crate::bounds::{
    rate_bound, verify_inequality, BoundId, BoundParams, BoundReport, GridOutcome, InequalityGrid,
    InequalityId,
};
use crate::checkers::{
    check_list_decodable, check_list_decodable_with, DecodabilityQuery, Mode, Strategy, StrategyChoice, Witness,
};
use crate::constructions::{run_construction, ConstructionId, ConstructionParams, ConstructionRow};
use crate::error::Error;
use crate::facts::{verify_facts, FactSummary, FactsConfig};
use crate::hamming::parse_code;
use crate::numerics::format_rational;
use crate::random_codes::{k_for_gap, mc_campaign, CampaignReport, CodeKind, RandomCodeSpec};

pub use config::{parse_pairs, ScenarioConfig, ScenarioKind};
pub use plot::{emit_plotdata, parse_report};

/// Failures of a scenario run, each with its process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScenarioError {
    /// Bad or missing config value. Exit code 2.
    Config { key: String, message: String },
    /// The run finished but an invariant or cross-check failed. Exit code 1.
    Failed(String),
    /// Reading or writing a file failed. Exit code 2.
    Io(String),
}

impl ScenarioError {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        ScenarioError::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Failed(_) => 1,
            ScenarioError::Config { .. } | ScenarioError::Io(_) => 2,
        }
    }

    /// Library errors: disagreements are failures, everything else is blamed on `key`.
    fn from_lib(key: &str, e: Error) -> Self {
        match e {
            Error::Inconsistent(m) => ScenarioError::Failed(m),
            other => ScenarioError::config(key, other.to_string()),
        }
    }
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Config { key, message } => write!(f, "config error in `{key}`: {message}"),
            ScenarioError::Failed(m) => write!(f, "check failed: {m}"),
            ScenarioError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

/// Result of one run. The CSV body depends only on the config; the wall-clock time is
/// kept out of it.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioReport {
    pub config: Vec<(String, String)>,
    /// Enumeration budgets in force, echoed into the comment header.
    pub budgets: Vec<(&'static str, u128)>,
    pub header: String,
    pub rows: Vec<String>,
    /// Rows that failed their check; nonzero makes the run exit with code 1.
    pub failures: u64,
    pub wall_clock: Duration,
}

impl ScenarioReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.config {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        for (k, v) in &self.budgets {
            out.push_str(&format!("# budget {k} = {v}\n"));
        }
        out.push_str(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        out
    }

    /// Values of a named column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.header.split(',').position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r.split(',').nth(idx).unwrap_or("")).collect())
    }
}

fn budgets() -> Vec<(&'static str, u128)> {
    vec![
        ("centers", crate::checkers::CENTER_BUDGET),
        ("subsets", crate::checkers::SUBSET_BUDGET),
        ("center_search", crate::checkers::CENTER_SEARCH_BUDGET as u128),
        ("erasure", crate::checkers::ERASURE_BUDGET),
        ("witness_count", crate::random_codes::COUNT_BUDGET),
        ("message_table", crate::random_codes::MESSAGE_BUDGET),
        ("ball_sum", crate::random_codes::BALL_SUM_BUDGET),
    ]
}

/// Runs a resolved config. Plot configs are handled by [`emit_plotdata`] instead.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport, ScenarioError> {
    let start = Instant::now();
    let (header, rows, failures) = match cfg.scenario {
        ScenarioKind::Check => run_check(cfg)?,
        ScenarioKind::Construct => run_construct(cfg)?,
        ScenarioKind::Bounds => run_bounds(cfg)?,
        ScenarioKind::MonteCarlo => run_montecarlo(cfg)?,
        ScenarioKind::VerifyFacts => run_facts(cfg)?,
        ScenarioKind::Plot => {
            return Err(ScenarioError::config("scenario", "plot configs go through emit_plotdata"))
        }
    };
    Ok(ScenarioReport {
        config: cfg.entries().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        budgets: budgets(),
        header,
        rows,
        failures,
        wall_clock: start.elapsed(),
    })
}

type Rows = (String, Vec<String>, u64);

fn witness_field(w: &Option<Witness>) -> String {
    match w {
        None => "NA".into(),
        Some(w) => {
            let list: Vec<String> = w.list.members().iter().map(|c| c.to_text()).collect();
            format!("{}@{}", list.join("|"), w.center.to_text())
        }
    }
}

fn run_check(cfg: &ScenarioConfig) -> Result<Rows, ScenarioError> {
    let path = cfg.raw("code");
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::config("code", format!("{path}: {e}")))?;
    let code = parse_code(&text).map_err(|e| ScenarioError::config("code", e.to_string()))?;
    let mode = Mode::parse(cfg.raw("mode")).map_err(|e| ScenarioError::config("mode", e.to_string()))?;
    let p = cfg.rational("p")?;
    let l: usize = cfg.parsed("L")?;
    let query = DecodabilityQuery::new(code, p.clone(), l, mode).map_err(|e| ScenarioError::from_lib("p", e))?;
    let choice = match cfg.raw("strategy") {
        "all" => StrategyChoice::AllFeasible,
        "centers" => StrategyChoice::Only(Strategy::Centers),
        "subsets" => StrategyChoice::Only(Strategy::Subsets),
        other => return Err(ScenarioError::config("strategy", format!("unknown strategy {other:?}"))),
    };
    let decision = if mode == Mode::Erasure || choice == StrategyChoice::AllFeasible {
        check_list_decodable(&query)
    } else {
        check_list_decodable_with(&query, choice)
    }
    .map_err(|e| ScenarioError::from_lib("code", e))?;
    if let Some(w) = &decision.witness {
        w.verify(&query).map_err(|e| ScenarioError::Failed(format!("witness does not verify: {e}")))?;
    }
    let strategies: Vec<&str> = decision
        .strategies
        .iter()
        .map(|s| match s {
            Strategy::Centers => "centers",
            Strategy::Subsets => "subsets",
        })
        .collect();
    let row = format!(
        "{},{},{},{},{},{},{},{},{}",
        mode,
        format_rational(&p),
        l,
        query.code().n(),
        query.code().len(),
        if mode == Mode::Erasure { query.support_size() } else { query.radius() },
        decision.decodable,
        if strategies.is_empty() { "buckets".to_string() } else { strategies.join("+") },
        witness_field(&decision.witness)
    );
    Ok(("mode,p,L,n,size,parameter,decodable,strategies,witness".into(), vec![row], 0))
}

fn run_construct(cfg: &ScenarioConfig) -> Result<Rows, ScenarioError> {
    let id = ConstructionId::parse(cfg.raw("construction")).map_err(|e| ScenarioError::config("construction", e.to_string()))?;
    let params = ConstructionParams {
        id,
        p: cfg.rational("p")?,
        lambda: cfg.rational("lambda")?,
        list_size: cfg.parsed("L")?,
        n: cfg.parsed("n")?,
        code_size: cfg.parsed("size")?,
        draws: cfg.parsed_auto("draws")?,
        shell_trials: cfg.parsed("shell_trials")?,
    };
    let trials: u64 = cfg.parsed("trials")?;
    let seed = cfg.seed()?;
    let mut rows = Vec::new();
    let mut failures = 0;
    for t in 0..trials {
        match run_construction(&params, seed, t) {
            Ok(r) => rows.push(r.csv_row()),
            Err(Error::Inconsistent(m)) => {
                failures += 1;
                rows.push(format!("{id},{t},{},NA,inconsistent:{},0,NA,NA,NA,NA,NA,NA", params.n, m.replace(',', ";")));
            }
            Err(e) => return Err(ScenarioError::from_lib("construction", e)),
        }
    }
    Ok((ConstructionRow::CSV_HEADER.into(), rows, failures))
}

fn run_bounds(cfg: &ScenarioConfig) -> Result<Rows, ScenarioError> {
    let name = cfg.raw("bound");
    if let Ok(id) = InequalityId::parse(name) {
        let step: i64 = cfg.parsed("step")?;
        if step <= 0 {
            return Err(ScenarioError::config("step", "must be positive"));
        }
        let mut grid = if step == 1000 {
            InequalityGrid::standard(id)
        } else {
            InequalityGrid::coarse(id, step)
        };
        let ns: Vec<u64> = cfg.list("n")?;
        if !ns.is_empty() {
            grid.n = ns;
        }
        let mut rows = Vec::new();
        let mut failures = 0;
        for o in verify_inequality(id, &grid) {
            if let GridOutcome::Checked(r) = o {
                // The exact-expectation ladder reports a trend, not a pointwise claim.
                if !r.satisfied && id != InequalityId::OverlapExpectation {
                    failures += 1;
                }
                rows.push(r.csv_row());
            }
        }
        return Ok((BoundReport::CSV_HEADER.into(), rows, failures));
    }
    let id = BoundId::parse(name).map_err(|e| ScenarioError::config("bound", e.to_string()))?;
    let ps = cfg.rational_list("p")?;
    let ls: Vec<u64> = cfg.list("L")?;
    let lambdas = cfg.rational_list("lambda")?;
    let gammas = cfg.rational_list("gamma")?;
    let qs: Vec<u32> = cfg.list("q")?;
    let epss = cfg.rational_list("eps")?;
    let zs = cfg.rational_list("z")?;
    let ns: Vec<u64> = cfg.list("n")?;
    // Cartesian product over every supplied list; an empty list leaves the field unset.
    let mut points = vec![BoundParams::default()];
    fn expand<T: Clone>(points: Vec<BoundParams>, values: &[T], set: impl Fn(&mut BoundParams, T)) -> Vec<BoundParams> {
        if values.is_empty() {
            return points;
        }
        points
            .into_iter()
            .flat_map(|pt| {
                values.iter().map(|v| {
                    let mut q = pt.clone();
                    set(&mut q, v.clone());
                    q
                }).collect::<Vec<_>>()
            })
            .collect()
    }
    points = expand(points, &ps, |b, v| b.p = Some(v));
    points = expand(points, &ls, |b, v| b.list_size = Some(v));
    points = expand(points, &lambdas, |b, v| b.lambda = Some(v));
    points = expand(points, &gammas, |b, v| b.gamma = Some(v));
    points = expand(points, &qs, |b, v| b.q = Some(v));
    points = expand(points, &epss, |b, v| b.eps = Some(v));
    points = expand(points, &zs, |b, v| b.z = Some(v));
    points = expand(points, &ns, |b, v| b.n = Some(v));
    let rows = points
        .iter()
        .map(|pt| rate_bound(id, pt).map(|r| r.csv_row()).map_err(|e| ScenarioError::from_lib("bound", e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((BoundReport::CSV_HEADER.into(), rows, 0))
}

fn run_montecarlo(cfg: &ScenarioConfig) -> Result<Rows, ScenarioError> {
    let q: u32 = cfg.parsed("q")?;
    let ns: Vec<usize> = cfg.list("n")?;
    let fixed_k: Option<usize> = cfg.parsed_auto("k")?;
    let gamma: f64 = cfg.parsed("gamma")?;
    let kind = CodeKind::parse(cfg.raw("kind")).map_err(|e| ScenarioError::config("kind", e.to_string()))?;
    let mode = Mode::parse(cfg.raw("mode")).map_err(|e| ScenarioError::config("mode", e.to_string()))?;
    let p = cfg.rational("p")?;
    let ls: Vec<usize> = cfg.list("L")?;
    let trials: u64 = cfg.parsed("trials")?;
    let seed = cfg.seed()?;
    if ns.is_empty() || ls.is_empty() {
        return Err(ScenarioError::config(if ns.is_empty() { "n" } else { "L" }, "needs at least one value"));
    }
    let mut rows = Vec::new();
    for &n in &ns {
        let (k, realized) = match fixed_k {
            Some(k) => (k, None),
            None => {
                let (k, g) = k_for_gap(mode, q, &p, gamma, n).map_err(|e| ScenarioError::from_lib("mode", e))?;
                (k, Some(g))
            }
        };
        let spec = RandomCodeSpec::new(q, k, n, kind, seed).map_err(|e| ScenarioError::from_lib("n", e))?;
        for &l in &ls {
            let mut report = mc_campaign(&spec, mode, &p, l, trials).map_err(|e| ScenarioError::from_lib("mode", e))?;
            if trials == 0 {
                continue;
            }
            if fixed_k.is_none() {
                report.gamma_requested = Some(gamma);
                report.gamma_realized = realized;
            }
            rows.push(report.csv_row());
        }
    }
    Ok((CampaignReport::CSV_HEADER.into(), rows, 0))
}

fn run_facts(cfg: &ScenarioConfig) -> Result<Rows, ScenarioError> {
    let fc = FactsConfig {
        seed: cfg.seed()?,
        hyper_n_max: cfg.parsed("hyper_n_max")?,
        q_weight_max: cfg.parsed("q_weight_max")?,
        binomial_n_max: cfg.parsed("binomial_n_max")?,
        ball_n_max: cfg.parsed("ball_n_max")?,
        centroid_lists: cfg.parsed("centroid_lists")?,
        sweep_den: cfg.parsed("sweep_den")?,
        overlap_ladder: cfg.list("ladder")?,
    };
    if fc.sweep_den <= 0 || fc.sweep_den > 1000 {
        return Err(ScenarioError::config("sweep_den", "must lie in 1..=1000"));
    }
    let summaries = verify_facts(&fc);
    let failures = summaries.iter().filter(|s| !s.satisfied()).count() as u64;
    Ok((
        FactSummary::CSV_HEADER.into(),
        summaries.iter().map(FactSummary::csv_row).collect(),
        failures,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: ScenarioKind, text: &str) -> ScenarioConfig {
        ScenarioConfig::from_text(Some(kind), text, &[]).unwrap()
    }

    #[test]
    fn montecarlo_is_reproducible() {
        let c = cfg(ScenarioKind::MonteCarlo, "n = 6 8\nL = 2 3\ntrials = 50\nseed = 4");
        let a = run_scenario(&c).unwrap();
        let b = run_scenario(&c).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.rows.len(), 4);
        assert!(a.to_csv().starts_with("# scenario = montecarlo\n"));
        assert!(a.to_csv().contains("# trials = 50\n"));
    }

    #[test]
    fn zero_trials_give_an_empty_body() {
        let r = run_scenario(&cfg(ScenarioKind::MonteCarlo, "trials = 0")).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn malformed_rational_names_the_key() {
        let e = run_scenario(&cfg(ScenarioKind::MonteCarlo, "p = 0.3.1")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(matches!(e, ScenarioError::Config { key, .. } if key == "p"));
    }

    #[test]
    fn bounds_product() {
        let r = run_scenario(&cfg(ScenarioKind::Bounds, "bound = lemma19_interval\np = 1/4\nL = 5\ngamma = 1/100\nlambda = 3/10 2/5 1/2")).unwrap();
        assert_eq!(r.rows.len(), 3);
        let r = run_scenario(&cfg(ScenarioKind::Bounds, "bound = fact23\nstep = 20")).unwrap();
        assert!(!r.rows.is_empty() && r.failures == 0);
    }

    #[test]
    fn construct_rows() {
        let r = run_scenario(&cfg(ScenarioKind::Construct, "construction = thm15\ntrials = 5\nn = 12\nlambda = 1/2")).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert_eq!(r.failures, 0);
        assert_eq!(r.column("construction").unwrap(), vec!["thm15"; 5]);
    }
}
