//! graph6 text encoding: a size prefix followed by the upper triangle of the
//! adjacency matrix read column by column, six bits per printable byte.

use thiserror::Error;

use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;
const MAX_N: usize = (1 << 36) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at column {column} is outside the graph6 range")]
    BadByte { column: usize, byte: u8 },
    #[error("sparse6 and digraph6 are not supported (column {column})")]
    Unsupported { column: usize },
    #[error("expected {expected} data bytes after column {column}, found {found}")]
    Truncated {
        column: usize,
        expected: usize,
        found: usize,
    },
    #[error("unexpected trailing data at column {column}")]
    Trailing { column: usize },
    #[error("padding bits are not zero at column {column}")]
    Padding { column: usize },
    #[error("graph on {0} vertices is too large for graph6")]
    TooLarge(usize),
}

/// Parses one graph6 line. A leading `>>graph6<<` header and trailing
/// line-break characters are accepted.
pub fn parse(text: &str) -> Result<Graph, Graph6Error> {
    let mut offset = 0;
    let mut s = text.trim_end_matches(['\n', '\r']);
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
        offset = HEADER.len();
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if bytes[0] == b':' || bytes[0] == b'&' {
        return Err(Graph6Error::Unsupported { column: offset });
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte {
                column: offset + i,
                byte: b,
            });
        }
    }
    let (n, start) = decode_size(bytes, offset)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() < nbytes {
        return Err(Graph6Error::Truncated {
            column: offset + start,
            expected: nbytes,
            found: data.len(),
        });
    }
    if data.len() > nbytes {
        return Err(Graph6Error::Trailing {
            column: offset + start + nbytes,
        });
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = data[nbytes - 1] - BIAS;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding {
                column: offset + start + nbytes - 1,
            });
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8], offset: usize) -> Result<(usize, usize), Graph6Error> {
    let take = |from: usize, count: usize| -> Result<usize, Graph6Error> {
        if bytes.len() < from + count {
            return Err(Graph6Error::Truncated {
                column: offset + from,
                expected: count,
                found: bytes.len().saturating_sub(from),
            });
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize))
    };
    if bytes[0] != 126 {
        return Ok(((bytes[0] - BIAS) as usize, 1));
    }
    if bytes.len() > 1 && bytes[1] == 126 {
        Ok((take(2, 6)?, 8))
    } else {
        Ok((take(1, 3)?, 4))
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    let push_groups = |out: &mut Vec<u8>, groups: usize| {
        for g in (0..groups).rev() {
            out.push(((n >> (6 * g)) & 63) as u8 + BIAS);
        }
    };
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        push_groups(out, 3);
    } else {
        out.push(126);
        out.push(126);
        push_groups(out, 6);
    }
}

/// Encodes `g` without a header.
pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + BIAS);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4() {
        let g = parse("C~").unwrap();
        assert_eq!(g, Graph::complete(4));
        assert_eq!(encode(&g).unwrap(), "C~");
    }

    #[test]
    fn edgeless_five() {
        let g = parse("D??").unwrap();
        assert_eq!((g.n(), g.m()), (5, 0));
    }

    #[test]
    fn single_vertex_and_single_edge() {
        assert_eq!(parse("@").unwrap(), Graph::new(1));
        assert_eq!(parse("A_").unwrap(), Graph::path(2));
        assert_eq!(parse("?").unwrap(), Graph::new(0));
    }

    #[test]
    fn header_is_tolerated() {
        assert_eq!(parse(">>graph6<<C~\n").unwrap(), Graph::complete(4));
    }

    #[test]
    fn errors_point_at_the_column() {
        assert_eq!(
            parse("C}~").unwrap_err(),
            Graph6Error::Trailing { column: 2 }
        );
        assert_eq!(
            parse("C\t").unwrap_err(),
            Graph6Error::BadByte {
                column: 1,
                byte: b'\t'
            }
        );
        assert!(matches!(
            parse("D?").unwrap_err(),
            Graph6Error::Truncated { column: 1, .. }
        ));
        assert_eq!(parse("A`").unwrap_err(), Graph6Error::Padding { column: 1 });
        assert_eq!(
            parse(":Fa@x^").unwrap_err(),
            Graph6Error::Unsupported { column: 0 }
        );
    }

    #[test]
    fn long_size_prefix() {
        let mut out = Vec::new();
        encode_size(63, &mut out);
        assert_eq!(out, b"~??~");
        out.clear();
        encode_size(258_048, &mut out);
        assert_eq!(out.len(), 8);
        assert_eq!(decode_size(&out, 0).unwrap(), (258_048, 8));
        let g = Graph::cycle(100);
        assert_eq!(parse(&encode(&g).unwrap()).unwrap(), g);
    }
}
