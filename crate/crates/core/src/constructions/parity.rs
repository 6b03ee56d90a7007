use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("prescribed set has odd size {0}")]
    OddSet(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

/// Spanning subgraph (as an edge list) whose odd-degree vertices are
/// exactly `s`: on a DFS tree, a tree edge is kept iff the subtree below it
/// holds an odd number of vertices of `s`.
pub fn parity_subgraph(g: &Graph, s: &[Vertex]) -> Result<Vec<Edge>, ParityError> {
    let set: BTreeSet<Vertex> = s.iter().copied().collect();
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return Err(ParityError::VertexOutOfRange(v));
    }
    if set.len() % 2 == 1 {
        return Err(ParityError::OddSet(set.len()));
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    if !g.is_connected() {
        return Err(ParityError::Disconnected);
    }
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        order.push(v);
        for &w in g.neighbors(v).iter().rev() {
            if !seen[w] {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut odd: Vec<bool> = (0..n).map(|v| set.contains(&v)).collect();
    let mut out = Vec::new();
    for &v in order.iter().skip(1).rev() {
        if odd[v] {
            out.push(Edge::new(v, parent[v]));
            odd[parent[v]] ^= true;
        }
    }
    out.sort_unstable();
    Ok(out)
}
