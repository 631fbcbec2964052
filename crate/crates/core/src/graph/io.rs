//! Edge-list and graph6 readers, and the edge-list writer.
//!
//! Edge-list format: a header line `n m`, then `m` lines `u v` with 0-based
//! ids. Tokens are whitespace separated and anything after `#` is ignored.

use super::{Graph, GraphError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("graph6: {0}")]
    Graph6(String),
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| line_err(1, "missing header \"n m\""))?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for _ in 0..m {
        let (line, content) = lines
            .next()
            .ok_or_else(|| line_err(last_line + 1, format!("expected {m} edges, found {} before end of input", edges.len())))?;
        let (u, v) = parse_pair(line, content)?;
        if u >= n || v >= n {
            return Err(line_err(line, format!("edge ({u}, {v}) out of range for n = {n}")));
        }
        edges.push((u, v));
        last_line = line;
    }
    if let Some((line, _)) = lines.next() {
        return Err(line_err(line, format!("unexpected content after {m} edges")));
    }
    Graph::from_edges(n, &edges).map_err(|e| {
        let line = match e {
            GraphError::SelfLoop(u) => edges.iter().position(|&(a, b)| a == u && b == u),
            GraphError::DuplicateEdge(a, b) => edges
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| (x.min(y), x.max(y)) == (a, b))
                .nth(1)
                .map(|(i, _)| i),
            _ => None,
        };
        line_err(line.map_or(header_line, |i| edge_line(text, i)), e.to_string())
    })
}

// Source line of the `index`-th edge.
fn edge_line(text: &str, index: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.split('#').next().unwrap_or("").trim().is_empty())
        .nth(index + 1)
        .map_or(0, |(i, _)| i + 1)
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize), ParseError> {
    let mut tokens = content.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = tokens.next().ok_or_else(|| line_err(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| line_err(line, format!("invalid integer {tok:?}")))
    };
    let a = next("first value")?;
    let b = next("second value")?;
    if let Some(extra) = tokens.next() {
        return Err(line_err(line, format!("unexpected token {extra:?}")));
    }
    Ok((a, b))
}

/// Header line, then edges `u v` with `u < v` in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Decodes one graph6 string (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, rest) = match bytes {
        [] => return Err(ParseError::Graph6("empty input".into())),
        [126, 126, tail @ ..] => (decode_n(tail, 6)?, &tail[6..]),
        [126, tail @ ..] => (decode_n(tail, 3)?, &tail[3..]),
        [b, tail @ ..] => ((*b - 63) as usize, tail),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if rest.len() != bytes_needed {
        return Err(ParseError::Graph6(format!("expected {bytes_needed} data bytes for n = {n}, found {}", rest.len())));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
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
    if (bits_needed..bytes_needed * 6).any(bit) {
        return Err(ParseError::Graph6("nonzero padding bits".into()));
    }
    Graph::from_edges(n, &edges).map_err(|e| ParseError::Graph6(e.to_string()))
}

fn decode_n(tail: &[u8], len: usize) -> Result<usize, ParseError> {
    if tail.len() < len {
        return Err(ParseError::Graph6("truncated size field".into()));
    }
    Ok(tail[..len].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ascii")
}

/// Reads either format: graph6 when the first meaningful line is a single
/// token that is not a plain integer pair header, edge list otherwise.
pub fn parse_graph_auto(text: &str) -> Result<Graph, ParseError> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with(">>graph6<<") => parse_graph6(l),
        Some(l) if l.split_whitespace().count() == 1 && !l.chars().all(|c| c.is_ascii_digit()) => parse_graph6(l),
        _ => parse_edge_list(text),
    }
}
