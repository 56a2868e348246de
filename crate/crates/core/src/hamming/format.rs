//! Plain-text code files.
//!
//! ```text
//! #code q=2 n=4
//! #weight w=2
//! 0011
//! 0101
//! ```
//!
//! Symbols are single characters `0-9` then `a-f`, so files carry q <= 16.
//! Any other line starting with `#` is a comment.

use crate::error::{Error, Result};

use super::code::Code;
use super::word::Word;

fn header_field(line: &str, key: &str) -> Result<u64> {
    let prefix = format!("{key}=");
    line.split_whitespace()
        .find_map(|tok| tok.strip_prefix(prefix.as_str()))
        .ok_or_else(|| Error::parse(format!("missing `{key}=` in {line:?}")))?
        .parse()
        .map_err(|_| Error::parse(format!("bad `{key}` value in {line:?}")))
}

pub fn parse_code(text: &str) -> Result<Code> {
    let mut shape = None;
    let mut weight = None;
    let mut words = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#code") {
            let q = header_field(rest, "q")?;
            let n = header_field(rest, "n")?;
            if !(2..=16).contains(&q) {
                return Err(Error::parse(format!("code files need 2 <= q <= 16, got {q}")));
            }
            shape = Some((q as u32, n as usize));
        } else if let Some(rest) = line.strip_prefix("#weight") {
            weight = Some(header_field(rest, "w")? as usize);
        } else if line.starts_with('#') {
            continue;
        } else {
            let (q, n) = shape.ok_or_else(|| {
                Error::parse(format!("line {}: codeword before `#code` header", lineno + 1))
            })?;
            let w = Word::parse(q, line)
                .map_err(|e| Error::parse(format!("line {}: {e}", lineno + 1)))?;
            if w.len() != n {
                return Err(Error::parse(format!(
                    "line {}: codeword has length {}, header says n={n}",
                    lineno + 1,
                    w.len()
                )));
            }
            words.push(w);
        }
    }
    let (q, n) = shape.ok_or_else(|| Error::parse("missing `#code q=<q> n=<n>` header"))?;
    let code = Code::new(q, n, words)?;
    match weight {
        Some(w) => code.with_weight_tag(w),
        None => Ok(code),
    }
}

pub fn write_code(code: &Code) -> Result<String> {
    if code.q() > 16 {
        return Err(Error::domain(format!(
            "code files carry q <= 16, code has q={}",
            code.q()
        )));
    }
    let mut out = format!("#code q={} n={}\n", code.q(), code.n());
    if let Some(w) = code.weight_tag() {
        out.push_str(&format!("#weight w={w}\n"));
    }
    for c in code.words() {
        out.push_str(&c.to_text());
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_weight_and_comments() {
        let text = "# a comment\n#code q=3 n=3\n#weight w=2\n120\n\n011\n";
        let code = parse_code(text).unwrap();
        assert_eq!((code.q(), code.n(), code.len()), (3, 3, 2));
        assert_eq!(code.weight_tag(), Some(2));
        assert_eq!(parse_code(&write_code(&code).unwrap()).unwrap(), code);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse_code("0101\n").is_err());
        assert!(parse_code("#code q=2 n=3\n0101\n").is_err());
        assert!(parse_code("#code q=2 n=2\n02\n").is_err());
        assert!(parse_code("#code q=2 n=2\n01\n01\n").is_err());
        assert!(parse_code("#code q=2 n=2\n#weight w=1\n11\n").is_err());
        assert!(parse_code("#code q=x n=2\n").is_err());
    }
}
