//! Text formats: a plain edge list and graph6.

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Parses `n` on the first line followed by one `u v` pair per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count {header:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("expected two endpoints in {line:?}")))?;
            tok.parse()
                .map_err(|_| Error::Parse(format!("bad endpoint {tok:?}")))
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(Error::Parse(format!("trailing data in {line:?}")));
        }
        edges.push((u, v));
    }
    Graph::build(n, &edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        bytes.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Parses a graph6 string, with or without the `>>graph6<<` header.
///
/// Only the canonical encoding is accepted (shortest size field, zero
/// padding bits), so `to_graph6(parse_graph6(s)) == s` for every accepted `s`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let data: Vec<u8> = s.bytes().collect();
    if data.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {b:#x}")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = if data[0] != 126 {
        (six(data[0]), &data[1..])
    } else if data.len() >= 2 && data[1] != 126 {
        if data.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = (six(data[1]) << 12) | (six(data[2]) << 6) | six(data[3]);
        if n <= 62 {
            return Err(Error::Parse("non-canonical graph6 size field".into()));
        }
        (n, &data[4..])
    } else {
        if data.len() < 8 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = data[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | six(b));
        if n <= 258_047 {
            return Err(Error::Parse("non-canonical graph6 size field".into()));
        }
        (n, &data[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() != expected {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expected} for n = {n}",
            rest.len()
        )));
    }
    let bit = |k: usize| (six(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    for k in bits..expected * 6 {
        if bit(k) {
            return Err(Error::Parse("nonzero graph6 padding bits".into()));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges_unchecked(n, &edges))
}
