//! Adversarial centers against random constant-weight codes.

use listdec::constructions::{
    common_support_center, expected_common_support, expected_half_distance, random_constant_weight_code,
    special_codeword_attack, warmup_center, AttackOutcome,
};
use listdec::numerics::{format_rational, ratio};
use listdec::seeding::trial_rng;

fn report(name: &str, o: &AttackOutcome) {
    match o {
        AttackOutcome::Found(r) => println!(
            "{name}: center {} list of {} at max distance {} (cap {}), sum {} (cap {})",
            r.center,
            r.list.len(),
            r.achieved.max_dist,
            r.per_word_bound,
            r.achieved.sum_dist,
            r.avg_bound
        ),
        AttackOutcome::Shortfall { found, needed } => println!("{name}: only {found} of {needed} qualified"),
    }
}

fn main() -> listdec::Result<()> {
    let mut rng = trial_rng(11, 0);
    let p = ratio(1, 4);
    let code = random_constant_weight_code(16, 8, 64, &mut rng)?;
    report("warmup", &warmup_center(&random_constant_weight_code(16, 6, 64, &mut rng)?, &p, &mut rng)?);
    report("special codeword", &special_codeword_attack(&code, &p, 3, &mut rng)?);
    let r = common_support_center(&code, 3, &mut rng)?;
    println!("common support: every member at distance {}", r.achieved.max_dist);

    let e = expected_common_support(&code, 3)?;
    println!(
        "E|S| = {} ~ {:.4}, convexity bound {:.4}",
        format_rational(&e.exact),
        listdec::numerics::rational_to_f64(&e.exact),
        listdec::numerics::rational_to_f64(&e.lower_bound)
    );
    let (ed, cap) = expected_half_distance(&code)?;
    println!("E delta = {} <= lambda(1 - lambda) = {}", format_rational(&ed), format_rational(&cap));
    Ok(())
}
