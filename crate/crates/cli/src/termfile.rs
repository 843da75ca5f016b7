//! Per-sentence term-vector files, shared by `poly` output and the cache.
//!
//! ```text
//! # format = syntaxpoly-term-vectors/1
//! # sent_id = s1
//! 0 0 ... 1
//! # sent_id = s2
//! ...
//! ```

use syntaxpoly::polynomial::{PolyError, TermVector};

use crate::error::{CliError, Result};

pub const FORMAT_LINE: &str = "# format = syntaxpoly-term-vectors/1";

pub fn write<'a>(entries: impl IntoIterator<Item = (&'a str, &'a [TermVector])>) -> String {
    let mut s = String::from(FORMAT_LINE);
    s.push('\n');
    for (sid, vectors) in entries {
        s.push_str("# sent_id = ");
        s.push_str(sid);
        s.push('\n');
        for v in vectors {
            s.push_str(&v.to_line());
            s.push('\n');
        }
    }
    s
}

pub fn parse(text: &str) -> Result<Vec<(String, Vec<TermVector>)>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l == FORMAT_LINE => {}
        _ => return Err(CliError::Input(format!("line 1: expected `{FORMAT_LINE}`"))),
    }
    let mut out: Vec<(String, Vec<TermVector>)> = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if let Some(sid) = line.strip_prefix("# sent_id = ") {
            out.push((sid.to_string(), Vec::new()));
        } else if line.trim().is_empty() {
            continue;
        } else {
            let (_, vectors) = out.last_mut().ok_or_else(|| {
                CliError::Input(format!("line {line_no}: term vector before any `# sent_id`"))
            })?;
            vectors.push(TermVector::parse_line(line, line_no).map_err(|e: PolyError| {
                CliError::Input(e.to_string())
            })?);
        }
    }
    Ok(out)
}
