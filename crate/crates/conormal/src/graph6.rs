//! graph6 codec and the plain edge-list text format.
//!
//! graph6 encodes the order, then the upper triangle of the adjacency
//! matrix in column order (bit for `(i, j)` with `i < j`, sorted by `j`
//! then `i`), packed six bits per printable character with an offset of
//! 63. Decoding is strict: the byte length must match the order exactly
//! and padding bits must be zero.
//!
//! The edge-list format is the fallback for graphs too large for the
//! single-character graph6 order prefix used by the CLI: a header line
//! `n m` followed by `m` lines `u v` with 0-based endpoints.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty graph6 input")]
    Empty,
    #[error("graph6 byte {byte:#04x} at position {pos} out of range")]
    BadByte { byte: u8, pos: usize },
    #[error("graph6 order field is truncated")]
    TruncatedOrder,
    #[error("graph6 order {0} not supported")]
    OrderTooLarge(u64),
    #[error("graph6 body has {got} bytes, expected {expected}")]
    BodyLength { got: usize, expected: usize },
    #[error("graph6 padding bits must be zero")]
    NonZeroPadding,
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

/// Serializes a graph to its graph6 string.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut bytes = Vec::new();
    encode_order(n, &mut bytes);
    let mut acc: u8 = 0;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.adjacent(i, j));
            nbits += 1;
            if nbits == 6 {
                bytes.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        bytes.push(acc + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Parses a graph6 string (a leading `>>graph6<<` header is accepted).
pub fn from_graph6(input: &str) -> Result<Graph, FormatError> {
    let s = input.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadByte { byte: b, pos });
        }
    }
    let (n, body) = decode_order(bytes)?;
    let n = usize::try_from(n).map_err(|_| FormatError::OrderTooLarge(n))?;
    if n == 0 {
        // order 0 has no vertex set to host even an empty graph here
        return Err(FormatError::OrderTooLarge(0));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::BodyLength { got: body.len(), expected });
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(FormatError::NonZeroPadding);
        }
    }
    Ok(Graph::new(n, edges)?)
}

fn decode_order(bytes: &[u8]) -> Result<(u64, &[u8]), FormatError> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as u64, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(FormatError::TruncatedOrder);
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - 63) as u64;
        }
        Ok((n, &bytes[8..]))
    } else {
        if bytes.len() < 4 {
            return Err(FormatError::TruncatedOrder);
        }
        let mut n = 0u64;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as u64;
        }
        Ok((n, &bytes[4..]))
    }
}

/// Formats a graph as edge-list text: `n m` header, then one `u v` per line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses edge-list text produced by [`to_edge_list`].
pub fn from_edge_list(input: &str) -> Result<Graph, FormatError> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| FormatError::EdgeList("missing header line".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| FormatError::EdgeList("header must be `n m`".into()))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| FormatError::EdgeList("header must be `n m`".into()))?;
    if parts.next().is_some() {
        return Err(FormatError::EdgeList("header must be exactly `n m`".into()));
    }
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::EdgeList(format!("bad edge line {line:?}")))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FormatError::EdgeList(format!("bad edge line {line:?}")))?;
        if it.next().is_some() {
            return Err(FormatError::EdgeList(format!("bad edge line {line:?}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeList(format!(
            "header announced {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(Graph::new(n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_vectors() {
        // 5 vertices, edges {0-2, 0-4, 1-3, 3-4}
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);

        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(from_graph6("C~").unwrap(), Graph::complete(4));

        assert_eq!(to_graph6(&Graph::complete(1)), "@");
        assert_eq!(from_graph6("@").unwrap(), Graph::complete(1));
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(from_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn strictness() {
        assert!(matches!(from_graph6(""), Err(FormatError::Empty)));
        assert!(matches!(from_graph6("C~~"), Err(FormatError::BodyLength { .. })));
        assert!(matches!(from_graph6("C"), Err(FormatError::BodyLength { .. })));
        assert!(matches!(from_graph6("D\n"), Err(FormatError::BodyLength { .. })));
        assert!(matches!(from_graph6("B!"), Err(FormatError::BadByte { .. })));
        // C3 needs bits 111 + pad 000; flipping a padding bit must be rejected
        let good = to_graph6(&Graph::cycle(3));
        assert_eq!(good, "Bw");
        assert!(matches!(from_graph6("Bx"), Err(FormatError::NonZeroPadding)));
    }

    #[test]
    fn long_order_form() {
        let g = Graph::path(70);
        let enc = to_graph6(&g);
        assert!(enc.starts_with('~'));
        assert_eq!(from_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(text.lines().next(), Some("5 4"));
        assert_eq!(from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_rejects_malformed() {
        assert!(from_edge_list("").is_err());
        assert!(from_edge_list("3\n").is_err());
        assert!(from_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert!(from_edge_list("3 1\n0 zero\n").is_err());
    }
}
