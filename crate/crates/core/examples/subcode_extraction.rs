//! Weight-shell extraction, restriction to a heavy coordinate set and the biased code.

use listdec::constructions::{biased_sample, random_constant_weight_code, restricted_subcode, weight_shell_subcode};
use listdec::hamming::Code;
use listdec::numerics::{rational_to_f64, ratio};
use listdec::seeding::trial_rng;

fn main() -> listdec::Result<()> {
    let mut rng = trial_rng(5, 0);
    let space = Code::full_space(2, 10)?;
    let sparse = Code::new(2, 10, space.words().iter().step_by(7).cloned().collect())?;
    let shell = weight_shell_subcode(&sparse, &ratio(2, 5), 64, &mut rng)?;
    println!(
        "shell at distance 4 from {}: {} codewords (average {:.2}, exhaustive {})",
        shell.center,
        shell.subcode.len(),
        rational_to_f64(&shell.averaging_bound),
        shell.exhaustive
    );

    let code = random_constant_weight_code(16, 6, 80, &mut rng)?;
    let r = restricted_subcode(&code, &ratio(1, 4), &mut rng)?;
    println!(
        "restriction to {} coordinates keeps {} codewords, {} distinct, off-set weight cap {}",
        r.support.len(),
        r.members.len(),
        r.restriction.len(),
        r.outside_cap
    );

    let b = biased_sample(&ratio(1, 4), 200, 14, Some(2000), &mut rng)?;
    println!(
        "biased code: {} draws, {} distinct, heaviest class weight {} with {} words, within bound {}",
        b.drawn,
        b.distinct,
        b.weight,
        b.code.len(),
        b.within_weight_bound
    );
    Ok(())
}
