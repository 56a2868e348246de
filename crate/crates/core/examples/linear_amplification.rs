//! Independent erasure lists in random linear codes close to exactly q^(L-1) codewords.

use listdec::numerics::ratio;
use listdec::random_codes::{affine_closure, independent_erasure_list, CodeKind, RandomCodeSpec};

fn main() -> listdec::Result<()> {
    for q in [2, 3, 5] {
        let spec = RandomCodeSpec::new(q, 3, 8, CodeKind::Linear, 9)?;
        let mut hits = 0;
        for t in 0..200 {
            let map = spec.sample(t)?;
            if let Some(found) = independent_erasure_list(&map, &ratio(1, 2), 2)? {
                let closure = affine_closure(&found.list, &found.center, true)?;
                assert_eq!(closure.agreeing as u32, q);
                hits += 1;
            }
        }
        println!("q={q}: {hits} of 200 codes had an independent pair; every closure had q codewords");
    }
    Ok(())
}
