//! Closed-form rate and size bounds at a few parameter points.

use listdec::bounds::{chebyshev_failure_bound, rate_bound, BoundId, BoundParams};
use listdec::numerics::{format_rational, ratio};

fn main() -> listdec::Result<()> {
    let base = BoundParams::default().with_p(ratio(1, 4)).with_list_size(10);
    for id in [BoundId::CapacityMinusInverseL, BoundId::AverageRadiusUpper, BoundId::BinaryRateUpper] {
        println!("{}", rate_bound(id, &base)?);
    }
    let p4 = BoundParams::default().with_p(ratio(2, 5)).with_list_size(3);
    println!("{}", rate_bound(BoundId::BinaryZeroRate, &p4)?);
    println!("{}", rate_bound(BoundId::QaryZeroRate, &p4.clone().with_q(3))?);
    println!("{}", rate_bound(BoundId::BiasedCodeParams, &BoundParams::default().with_p(ratio(1, 4)).with_list_size(200))?);
    for lambda in [ratio(3, 10), ratio(2, 5), ratio(1, 2)] {
        let params = base.clone().with_lambda(lambda).with_gamma(ratio(1, 100));
        println!("{}", rate_bound(BoundId::WeightedRateInterval, &params)?);
    }
    let b = chebyshev_failure_bound(&ratio(2, 1), &ratio(1, 1))?;
    println!("Chebyshev: Pr[W = 0] <= {}", format_rational(&b));
    Ok(())
}
