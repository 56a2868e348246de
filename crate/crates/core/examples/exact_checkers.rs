//! Exact list-decodability checks in all three modes, with verified witnesses.

use listdec::checkers::{check_list_decodable, find_violation, DecodabilityQuery, Mode};
use listdec::hamming::{Code, Word};
use listdec::numerics::ratio;

fn main() -> listdec::Result<()> {
    let words = ["000000", "111000", "000111", "110110", "011011", "101101"]
        .iter()
        .map(|s| Word::parse(2, s))
        .collect::<listdec::Result<Vec<_>>>()?;
    let code = Code::new(2, 6, words)?;
    for mode in [Mode::MaxRadius, Mode::AvgRadius, Mode::Erasure] {
        for l in 2..=4 {
            let query = DecodabilityQuery::new(code.clone(), ratio(1, 3), l, mode)?;
            let d = check_list_decodable(&query)?;
            print!("{mode:<10} p=1/3 L={l}: decodable={:<5}", d.decodable);
            if let Some(w) = &d.witness {
                w.verify(&query)?;
                let list: Vec<String> = w.list.members().iter().map(|c| c.to_text()).collect();
                print!(" center {} list [{}] stat {}", w.center.to_text(), list.join(" "), w.stat);
            }
            println!();
        }
    }
    // Randomized search finds a violation quickly when one exists.
    let query = DecodabilityQuery::new(code, ratio(1, 3), 2, Mode::MaxRadius)?;
    println!("random search: {:?}", find_violation(&query, 1, 1000)?.map(|w| w.stat));
    Ok(())
}
