//! Runs the invariant suite and prints its CSV.

use listdec::facts::{verify_facts, FactSummary, FactsConfig};

fn main() {
    let summaries = verify_facts(&FactsConfig::default());
    println!("{}", FactSummary::CSV_HEADER);
    for s in &summaries {
        println!("{}", s.csv_row());
        if !s.note.is_empty() {
            eprintln!("  {}: {}", s.fact_id, s.note);
        }
    }
    std::process::exit(if summaries.iter().all(FactSummary::satisfied) { 0 } else { 1 });
}
