//! Exact hypergeometric laws, the overlap probability Q and entropy sandwiches.

use listdec::numerics::{
    ball_fraction, binomial, entropy, entropy_power, format_rational, hyper_pmf, hyper_tail, q_delta, HyperParams,
};

fn main() -> listdec::Result<()> {
    let p = HyperParams::new(4, 2, 2);
    for t in 0..=2 {
        println!("f(4,2,2,{t}) = {}", format_rational(&hyper_pmf(p, t)));
    }
    println!("tail(4,2,2; 1) = {}", format_rational(&hyper_tail(p, 1)));
    // Interchanging marked and sampled counts leaves the law unchanged.
    assert_eq!(hyper_pmf(HyperParams::new(20, 7, 12), 4), hyper_pmf(HyperParams::new(20, 12, 7), 4));

    for dn in 0..=4 {
        let q = q_delta(8, 2 * dn, 4, 3)?;
        println!("Q(weight 8, distance {}, sample 4, threshold 3) = {}", 2 * dn, format_rational(&q));
    }

    println!("C(40, 10) = {}", binomial(40, 10));
    println!("2^(h(1/4) 40) = {:.1}", listdec::numerics::rational_to_f64(&entropy_power(2, 40, 10)));
    println!("h(1/4) = {:.10}, h_3(1/3) = {:.10}", entropy(0.25, 2)?, entropy(1.0 / 3.0, 3)?);
    println!("mu(3, 6, 2) = {}", format_rational(&ball_fraction(3, 6, 2)?));
    Ok(())
}
