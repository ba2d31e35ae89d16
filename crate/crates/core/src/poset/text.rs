use super::Poset;
use crate::error::{Error, Result};

/// Parses the poset text format: the first line holds the element count `k`, each further
/// line a strict relation `i < j`. Blank lines and `#` comments are ignored; the relation is
/// closed transitively.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut k: Option<usize> = None;
    let mut rel = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let line_no = lineno + 1;
        match k {
            None => {
                k = Some(line.parse().map_err(|_| {
                    Error::parse(line_no, 0, format!("expected element count, found `{line}`"))
                })?);
            }
            Some(size) => {
                let (a, b) = line
                    .split_once('<')
                    .ok_or_else(|| Error::parse(line_no, 0, "expected `i < j`"))?;
                let parse = |s: &str, byte: usize| -> Result<usize> {
                    let v: usize = s.trim().parse().map_err(|_| {
                        Error::parse(line_no, byte, format!("expected an element index, found `{}`", s.trim()))
                    })?;
                    if v >= size {
                        return Err(Error::parse(line_no, byte, format!("element {v} out of range 0..{size}")));
                    }
                    Ok(v)
                };
                rel.push((parse(a, 0)?, parse(b, a.len() + 1)?));
            }
        }
    }
    let k = k.ok_or_else(|| Error::parse(1, 0, "empty poset file"))?;
    Poset::from_strict_relations(k, &rel)
}

/// Poset text listing the cover relations.
pub fn to_poset_text(p: &Poset) -> String {
    let mut out = format!("{}\n", p.len());
    for (x, y) in p.cover_pairs() {
        out.push_str(&format!("{x} < {y}\n"));
    }
    out
}
