//! Drives the scenario runner from code: a config string in, CSV and plot data out.

use listdec::scenario::{emit_plotdata, run_scenario, ScenarioConfig, ScenarioKind};

const CONFIG: &str = "
# Pr[W = 0] along a length ladder
scenario = montecarlo
q = 2
n = 6 8 10 12
kind = linear
mode = erasure
p = 1/4
L = 2
trials = 300
seed = 17
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ScenarioConfig::from_text(Some(ScenarioKind::MonteCarlo), CONFIG, &[])?;
    let report = run_scenario(&cfg)?;
    print!("{}", report.to_csv());
    println!("--- plot data (n, log2 Pr[W=0], mean W)");
    print!("{}", emit_plotdata(&report, "n", &["log2(prW0)", "meanW"])?);
    Ok(())
}
