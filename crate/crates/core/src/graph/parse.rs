use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count accepted from text input.
const MAX_PARSED_VERTICES: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::Invalid(format!("unknown graph format `{other}`"))),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => {
            let mut lines = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with(">>graph6<<"));
            let (idx, line) = lines
                .next()
                .ok_or_else(|| Error::parse(1, 0, "no graph6 line found"))?;
            if let Some((extra, _)) = lines.next() {
                return Err(Error::parse(extra + 1, 0, "expected a single graph6 line"));
            }
            parse_graph6(line.trim()).map_err(|e| match e {
                Error::Parse { byte, message, .. } => Error::parse(idx + 1, byte, message),
                other => other,
            })
        }
    }
}

/// Parses `u v` lines. Vertex labels are non-negative integers and are renumbered to `0..n`
/// in ascending label order. A line holding a single label declares an isolated vertex.
/// `#` starts a comment; blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels = BTreeSet::new();
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut pos = 0;
        for tok in line.split_whitespace() {
            let byte = raw[pos..].find(tok).map_or(pos, |o| pos + o);
            pos = byte + tok.len();
            fields.push((byte, tok));
        }
        let parse_label = |(byte, tok): (usize, &str)| -> Result<u64> {
            tok.parse::<u64>().map_err(|e| {
                let msg = if matches!(e.kind(), std::num::IntErrorKind::PosOverflow) {
                    format!("vertex index `{tok}` overflows")
                } else {
                    format!("expected a vertex index, found `{tok}`")
                };
                Error::parse(lineno + 1, byte, msg)
            })
        };
        match fields.len() {
            0 => {}
            1 => {
                labels.insert(parse_label(fields[0])?);
            }
            2 => {
                let u = parse_label(fields[0])?;
                let v = parse_label(fields[1])?;
                labels.insert(u);
                labels.insert(v);
                pairs.push((u, v));
            }
            _ => {
                return Err(Error::parse(
                    lineno + 1,
                    fields[2].0,
                    "expected `u v`, found extra fields",
                ))
            }
        }
        if labels.len() > MAX_PARSED_VERTICES {
            return Err(Error::parse(
                lineno + 1,
                0,
                format!("more than {MAX_PARSED_VERTICES} vertices"),
            ));
        }
    }
    let index: std::collections::HashMap<u64, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut g = Graph::empty(labels.len());
    for (u, v) in pairs {
        g.add_edge(index[&u], index[&v]);
    }
    Ok(g)
}

/// Edge-list text that [`parse_edge_list`] maps back to the same graph.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let mut covered = vec![false; g.n()];
    for (u, v) in g.edges() {
        covered[u] = true;
        covered[v] = true;
        out.push_str(&format!("{u} {v}\n"));
    }
    for (v, c) in covered.iter().enumerate() {
        if !c {
            out.push_str(&format!("{v}\n"));
        }
    }
    out
}

fn graph6_byte(line: &str, i: usize) -> Result<u8> {
    let b = *line
        .as_bytes()
        .get(i)
        .ok_or_else(|| Error::parse(1, i, "graph6 string truncated"))?;
    if !(63..=126).contains(&b) {
        return Err(Error::parse(1, i, format!("byte {b} outside graph6 range 63..=126")));
    }
    Ok(b - 63)
}

/// Decodes one graph6 string (no loops can be expressed in this format).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let line = line.trim_end_matches(['\n', '\r']);
    let first = graph6_byte(line, 0)?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else {
        let second = graph6_byte(line, 1)?;
        if second < 63 {
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | graph6_byte(line, i)? as usize;
            }
            (n, 4)
        } else {
            let mut n = 0usize;
            for i in 2..8 {
                n = (n << 6) | graph6_byte(line, i)? as usize;
            }
            (n, 8)
        }
    };
    if n > MAX_PARSED_VERTICES {
        return Err(Error::parse(1, 0, format!("vertex count {n} too large")));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = pos + bits.div_ceil(6);
    if line.len() != expected {
        return Err(Error::parse(
            1,
            line.len().min(expected),
            format!("graph6 length mismatch: expected {expected} bytes for n={n}, found {}", line.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    let mut chunk = 0u8;
    for v in 1..n {
        for u in 0..v {
            if k % 6 == 0 {
                chunk = graph6_byte(line, pos)?;
                pos += 1;
            }
            if chunk & (1 << (5 - k % 6)) != 0 {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes a loopless graph as graph6.
pub fn to_graph6(g: &Graph) -> Result<String> {
    if let Some(v) = g.has_loop() {
        return Err(Error::Invalid(format!(
            "graph6 cannot express the self-loop at vertex {v}"
        )));
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if g.adjacent(u, v) {
                chunk |= 1 << (5 - k % 6);
            }
            k += 1;
            if k % 6 == 0 {
                out.push(chunk + 63);
                chunk = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push(chunk + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
