//! Probability that a sum of uniform ball points stays in the ball, exact and estimated.

use listdec::numerics::{format_rational, ratio};
use listdec::random_codes::{ball_sum_estimate, ball_sum_exact, ball_sum_ladder};
use listdec::seeding::trial_rng;

fn main() -> listdec::Result<()> {
    let exact = ball_sum_exact(2, &ratio(1, 2), 2, 2)?;
    let est = ball_sum_estimate(2, &ratio(1, 2), 2, 2, 100_000, &mut trial_rng(1, 0))?;
    println!(
        "n=2 m=2: exact {} estimate {:.4} 99% CI [{:.4}, {:.4}]",
        format_rational(&exact),
        est.estimate,
        est.ci.0,
        est.ci.1
    );
    for step in ball_sum_ladder(2, &ratio(1, 4), &[8, 16, 24, 32, 48, 64], 2, 50_000, 3)? {
        println!(
            "n={:<3} estimate {:.5} slope {:.4} exact slope {:?}",
            step.n, step.estimate.estimate, step.slope, step.exact_slope
        );
    }
    Ok(())
}
