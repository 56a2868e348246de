//! Words, codes and the plain-text code format.

use listdec::hamming::{centroid, dist_stats, parse_code, write_code, Code, ListTuple, Word};

fn main() -> listdec::Result<()> {
    let x = Word::parse(3, "0120")?;
    let y = Word::parse(3, "2110")?;
    println!("d({x}, {y}) = {}", x.distance(&y)?);
    println!("{x} + {y} = {}", x.add_mod(&y)?);

    let code = Code::all_of_weight(5, 2)?;
    println!("all weight-2 words of length 5: {} codewords", code.len());
    let text = write_code(&code)?;
    assert_eq!(parse_code(&text)?, code);
    print!("{text}");

    let list = ListTuple::new(code.words()[..3].to_vec())?;
    let c = centroid(&list);
    let stats = dist_stats(&c, &list)?;
    println!("centroid {c}: max distance {}, distance sum {}", stats.max_dist, stats.sum_dist);
    Ok(())
}
