//! Witness-count campaigns: exact E W against the Monte Carlo mean, and Pr[W = 0] with
//! its Chebyshev bound.

use listdec::checkers::Mode;
use listdec::numerics::{rational_to_f64, ratio};
use listdec::random_codes::{list_size_sweep, mc_campaign, CampaignReport, CodeKind, RandomCodeSpec};

fn main() -> listdec::Result<()> {
    println!("{}", CampaignReport::CSV_HEADER);
    for (kind, mode, q) in [
        (CodeKind::General, Mode::MaxRadius, 2),
        (CodeKind::General, Mode::Erasure, 2),
        (CodeKind::Linear, Mode::Erasure, 3),
    ] {
        let spec = RandomCodeSpec::new(q, 3, 8, kind, 42)?;
        let r = mc_campaign(&spec, mode, &ratio(1, 4), 2, 2000)?;
        println!("{}", r.csv_row());
        eprintln!(
            "  mean within 4 standard errors of exact E W = {:.3}: {:?}",
            rational_to_f64(&r.exact_ew),
            r.mean_within(4.0)
        );
    }
    let (points, top) = list_size_sweep(2, 10, CodeKind::Linear, 7, Mode::Erasure, &ratio(1, 5), 0.1, 1..=6, 200)?;
    for pt in &points {
        eprintln!("  L={} Pr[W=0]={:?}", pt.list_size, pt.report.pr_w0);
    }
    eprintln!("  witnesses persist up to L = {top:?}");
    Ok(())
}
