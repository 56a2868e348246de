//! Sweeps the entropy inequalities over their full grids and prints one summary line each.
//!
//! Run with `cargo run --release --example inequality_sweeps`; pass `--coarse` for a
//! quick pass at step 1/100.

use std::time::Instant;

use listdec::bounds::{ladder_onset, sweep_inequality, verify_inequality, GridOutcome, InequalityGrid, InequalityId};

fn main() {
    let coarse = std::env::args().any(|a| a == "--coarse");
    for id in InequalityId::ALL {
        let grid = if coarse {
            InequalityGrid::coarse(id, 100)
        } else {
            InequalityGrid::standard(id)
        };
        let start = Instant::now();
        let s = sweep_inequality(id, &grid);
        println!(
            "{:<14} checked={:<11} skipped={:<11} violations={:<4} highprec={:<5} {:.1}s",
            id.as_str(),
            s.checked,
            s.skipped_total(),
            s.violation_count,
            s.highprec_points,
            start.elapsed().as_secs_f64()
        );
        if let Some(t) = &s.tightest {
            println!("    tightest: {t}");
        }
        if id == InequalityId::OverlapExpectation {
            let reps: Vec<_> = verify_inequality(id, &grid)
                .into_iter()
                .filter_map(|o| match o {
                    GridOutcome::Checked(r) => Some(r),
                    GridOutcome::Skipped { .. } => None,
                })
                .collect();
            for r in &reps {
                println!("    n={:<4} (1/n) log2 E = {:.6}", r.inputs.n.unwrap_or(0), r.lhs);
            }
            println!("    onset n0 = {:?}", ladder_onset(&reps));
        }
    }
}
