//! graph6 in its short form (`n <= 62`).
//!
//! One header byte `n + 63`, then the upper triangle in column order
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed six bits per byte, most
//! significant bit first, each byte offset by 63.

use super::Graph;
use crate::{Error, Result};

const MAX_SHORT_ORDER: usize = 62;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line. A single trailing `\n` or `\r\n` is tolerated.
pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let text = text
        .strip_suffix(b"\n")
        .map(|t| t.strip_suffix(b"\r").unwrap_or(t))
        .unwrap_or(text);
    let Some(&head) = text.first() else {
        return Err(Error::parse(0, "empty graph6 input"));
    };
    if let Some(pos) = text.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(
            pos,
            format!("byte {} is outside the graph6 range 63..=126", text[pos]),
        ));
    }
    if head == 126 {
        return Err(Error::parse(
            0,
            "long-form graph6 header (n > 62) is not supported",
        ));
    }
    let n = (head - 63) as usize;
    let need = data_len(n);
    let data = &text[1..];
    if data.len() < need {
        return Err(Error::parse(
            text.len(),
            format!(
                "expected {need} data bytes for n = {n}, found {}",
                data.len()
            ),
        ));
    }
    if data.len() > need {
        return Err(Error::parse(1 + need, "trailing bytes after graph6 data"));
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    for k in total_bits..need * 6 {
        if bit(k) {
            return Err(Error::parse(1 + k / 6, "non-zero padding bits"));
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
    Graph::new(n, edges)
}

/// Encodes a graph with at most 62 vertices.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_SHORT_ORDER {
        return Err(Error::InvalidParams(format!(
            "graph6 short form holds at most {MAX_SHORT_ORDER} vertices, got {n}"
        )));
    }
    let mut bytes = vec![(n + 63) as u8];
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
    Ok(String::from_utf8(bytes).expect("graph6 bytes are ASCII"))
}
