//! graph6 corpus files (optionally gzipped) and a seeded random regular
//! graph generator for smoke tests.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::graph6::{self, Graph6Error};

/// One non-blank line of a corpus; `line` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLine {
    pub line: usize,
    pub text: String,
}

impl CorpusLine {
    pub fn parse(&self) -> Result<Graph, Graph6Error> {
        graph6::parse(&self.text)
    }

    pub fn id(&self) -> String {
        format!("{}:{}", self.line, self.text)
    }
}

fn open(path: &Path) -> io::Result<Box<dyn Read>> {
    let f = File::open(path)?;
    if path.extension().is_some_and(|e| e == "gz") {
        Ok(Box::new(MultiGzDecoder::new(f)))
    } else {
        Ok(Box::new(f))
    }
}

/// Lines of a graph6 file; `.gz` files are decompressed.
pub fn read_lines(path: impl AsRef<Path>) -> io::Result<Vec<CorpusLine>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(open(path.as_ref())?).lines().enumerate() {
        let text = line?.trim_end().to_string();
        if !text.is_empty() {
            out.push(CorpusLine { line: i + 1, text });
        }
    }
    Ok(out)
}

/// Every graph in a file; fails on the first bad line.
pub fn read_graphs(path: impl AsRef<Path>) -> io::Result<Vec<Graph>> {
    read_lines(path)?
        .iter()
        .map(|l| {
            l.parse()
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", l.line)))
        })
        .collect()
}

/// A uniformly paired `d`-regular simple graph on `n` vertices, by
/// rejection from the configuration model. Deterministic in `seed`.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Option<Graph> {
    if n * d % 2 != 0 || d >= n {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    'retry: for _ in 0..10_000 {
        points.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in points.chunks(2) {
            if pair[0] == pair[1] || !g.add_edge(pair[0], pair[1]) {
                continue 'retry;
            }
        }
        return Some(g);
    }
    None
}
