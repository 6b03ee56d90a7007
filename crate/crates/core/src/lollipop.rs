//! Thomason's lollipop walk for a second cycle through a fixed edge.
//!
//! The auxiliary graph `H` has as vertices the paths that start with the
//! anchor edge, contain every odd-degree vertex and end at an odd-degree
//! vertex. Moves rewire the tail of a path through an edge or a two-edge
//! detour back from its end. The rule is not quite symmetric: when
//! `x_{s+1}` is even and `s = n - 2`, the move drops `x_{n-1}`, and the
//! reverse move would need `s = n - 1`. [`lollipop_neighbors`] adds those
//! reverse moves so that `H` is an undirected graph, which is what the
//! parity argument needs.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::cycles::{Budget, CycleOrPath, SearchError, WalkError};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LollipopError {
    #[error("not a path: {0}")]
    NotAPath(WalkError),
    #[error("a lollipop path needs at least two vertices")]
    TooShort,
    #[error("odd-degree vertex {0} is missing from the path")]
    MissesOddVertex(Vertex),
    #[error("path ends at even-degree vertex {0}")]
    EvenEnd(Vertex),
    #[error("even-degree vertices {0} and {1} are adjacent")]
    EvenNeighbours(Vertex, Vertex),
    #[error("odd-degree vertex {0} is off the cycle")]
    OddOffCycle(Vertex),
    #[error("anchor {0} is not an edge of the cycle")]
    AnchorNotOnCycle(Edge),
    #[error("neither neighbour of the anchor along the cycle has odd degree")]
    NoOddNeighbour,
    #[error("host graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Search(#[from] SearchError),
    /// The walk ran out of paths without meeting a second odd-degree one.
    /// This would contradict the lemma.
    #[error("falsification: {0}")]
    Falsified(String),
}

/// A path starting with its anchor edge `x_1 x_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnchoredPath {
    vertices: Vec<Vertex>,
}

impl AnchoredPath {
    /// Validates the path against `g`: simple, at least one edge, every
    /// odd-degree vertex on it, odd-degree end.
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<AnchoredPath, LollipopError> {
        if vertices.len() < 2 {
            return Err(LollipopError::TooShort);
        }
        CycleOrPath::path(vertices.clone())
            .check_in(g)
            .map_err(LollipopError::NotAPath)?;
        let mut on = vec![false; g.n()];
        for &v in &vertices {
            on[v] = true;
        }
        if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1 && !on[v]) {
            return Err(LollipopError::MissesOddVertex(v));
        }
        let end = *vertices.last().unwrap();
        if g.degree(end) % 2 == 0 {
            return Err(LollipopError::EvenEnd(end));
        }
        Ok(AnchoredPath { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn anchor(&self) -> Edge {
        Edge::new(self.vertices[0], self.vertices[1])
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn as_path(&self) -> CycleOrPath {
        CycleOrPath::path(self.vertices.clone())
    }
}

fn on_path(g: &Graph, vs: &[Vertex]) -> Vec<bool> {
    let mut on = vec![false; g.n()];
    for &v in vs {
        on[v] = true;
    }
    on
}

/// Paths reachable from `p` by one move, in order of `s`, the direct edge
/// `x_s x_n` before detours `x_s u x_n` with `u` ascending.
pub fn lollipop_successors(
    g: &Graph,
    p: &AnchoredPath,
) -> Result<Vec<AnchoredPath>, LollipopError> {
    let x = &p.vertices;
    let n = x.len();
    let end = x[n - 1];
    let on = on_path(g, x);
    let mut out = Vec::new();
    // 0-based i is the 1-based s - 1, with 2 <= s <= n - 2.
    for i in 1..n.saturating_sub(2) {
        let xs = x[i];
        let mut mids: Vec<Option<Vertex>> = Vec::new();
        if g.has_edge(xs, end) {
            mids.push(None);
        }
        for &u in g.neighbors(xs) {
            if !on[u] && g.has_edge(u, end) {
                mids.push(Some(u));
            }
        }
        let next = x[i + 1];
        let keep_next = g.degree(next) % 2 == 1;
        let tail_from = if keep_next { i + 1 } else { i + 2 };
        for mid in mids {
            let mut q: Vec<Vertex> = x[..=i].to_vec();
            q.extend(mid);
            q.extend(x[tail_from..].iter().rev());
            let q_end = *q.last().unwrap();
            if g.degree(q_end) % 2 == 0 {
                return Err(LollipopError::EvenNeighbours(next, q_end));
            }
            out.push(AnchoredPath { vertices: q });
        }
    }
    Ok(out)
}

/// Paths `q` with `p` among the successors of `q` that are not themselves
/// successors of `p`: `q` has an even vertex `w` off `p` spliced in just
/// before the end, next to both `x_{n-1}` and `x_n`.
fn boundary_predecessors(g: &Graph, p: &AnchoredPath) -> Vec<AnchoredPath> {
    let x = &p.vertices;
    let n = x.len();
    if n < 3 {
        return Vec::new();
    }
    let on = on_path(g, x);
    let (pen, end) = (x[n - 2], x[n - 1]);
    g.neighbors(pen)
        .iter()
        .copied()
        .filter(|&w| !on[w] && g.degree(w) % 2 == 0 && g.has_edge(w, end))
        .map(|w| {
            let mut q = x[..n - 1].to_vec();
            q.push(w);
            q.push(end);
            AnchoredPath { vertices: q }
        })
        .collect()
}

/// Neighbours of `p` in the undirected auxiliary graph, sorted.
pub fn lollipop_neighbors(g: &Graph, p: &AnchoredPath) -> Result<Vec<AnchoredPath>, LollipopError> {
    let mut out = lollipop_successors(g, p)?;
    out.extend(boundary_predecessors(g, p));
    out.sort();
    out.dedup();
    Ok(out)
}

/// `d_G(x_n) - 1 - [x_1 x_n in E] - |U_P|`, where `U_P` holds the vertices
/// off `p` adjacent to both `x_1` and `x_n`.
///
/// Its parity always equals the parity of the degree of `p` in the
/// auxiliary graph. The values agree exactly when every vertex off `p` that
/// is adjacent to `x_n` has degree two.
pub fn path_degree_formula(g: &Graph, p: &AnchoredPath) -> i64 {
    let x1 = p.vertices[0];
    let end = p.end();
    let on = on_path(g, &p.vertices);
    let u_p = (0..g.n())
        .filter(|&u| !on[u] && g.has_edge(u, x1) && g.has_edge(u, end))
        .count();
    g.degree(end) as i64 - 1 - g.has_edge(x1, end) as i64 - u_p as i64
}

/// Checks that no two even-degree vertices are adjacent except along `anchor`.
pub fn check_even_independence(g: &Graph, anchor: Edge) -> Result<(), LollipopError> {
    for e in g.edges() {
        if e != anchor && g.degree(e.u) % 2 == 0 && g.degree(e.v) % 2 == 0 {
            return Err(LollipopError::EvenNeighbours(e.u, e.v));
        }
    }
    Ok(())
}

/// How the second cycle was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecondCycleRoute {
    /// A vertex off `C` next to two consecutive cycle vertices was spliced in.
    Detour(Vertex),
    /// The walk from `P*` reached the odd-degree path `P'`.
    Walk { steps: usize, end_path: Vec<Vertex> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondCycle {
    pub cycle: CycleOrPath,
    pub route: SecondCycleRoute,
}

/// A cycle other than `c` through `anchor` and every odd-degree vertex.
pub fn find_second_cycle(
    g: &Graph,
    c: &CycleOrPath,
    anchor: Edge,
    budget: &mut Budget,
) -> Result<SecondCycle, LollipopError> {
    c.check_in(g).map_err(LollipopError::NotAPath)?;
    if !c.is_cycle() || !c.contains_edge(anchor) {
        return Err(LollipopError::AnchorNotOnCycle(anchor));
    }
    if !g.is_connected() {
        return Err(LollipopError::Disconnected);
    }
    let odd = |v: Vertex| g.degree(v) % 2 == 1;
    let on = on_path(g, c.vertices());
    if let Some(v) = (0..g.n()).find(|&v| !on[v] && odd(v)) {
        return Err(LollipopError::OddOffCycle(v));
    }
    check_even_independence(g, anchor)?;

    // v_1 v_2 ... v_n with v_1 v_2 the anchor.
    let k = c.order();
    let cv = c.vertices();
    let i = (0..k)
        .find(|&i| Edge::new(cv[i], cv[(i + 1) % k]) == anchor)
        .unwrap();
    let v: Vec<Vertex> = (0..k).map(|j| cv[(i + j) % k]).collect();

    for j in 0..k {
        let (a, b) = (v[j], v[(j + 1) % k]);
        if Edge::new(a, b) == anchor {
            continue;
        }
        if let Some(&w) = g.neighbors(a).iter().find(|&&w| !on[w] && g.has_edge(w, b)) {
            let mut out = v.clone();
            out.insert(j + 1, w);
            return Ok(SecondCycle {
                cycle: CycleOrPath::cycle(out).canonical(),
                route: SecondCycleRoute::Detour(w),
            });
        }
    }

    let start: Vec<Vertex> = if odd(v[k - 1]) {
        v.clone()
    } else if odd(v[2]) {
        // Reverse the orientation: w_1 = v_2, w_2 = v_1, w_3 = v_n, ..., w_n = v_3.
        let mut w = vec![v[1], v[0]];
        w.extend(v[2..].iter().rev());
        w
    } else {
        return Err(LollipopError::NoOddNeighbour);
    };
    let p_star = AnchoredPath::new(g, start)?;
    let original = c.canonical();

    let mut seen: HashSet<AnchoredPath> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p_star.clone());
    queue.push_back((p_star.clone(), 0usize));
    while let Some((p, steps)) = queue.pop_front() {
        budget.tick()?;
        let nbrs = lollipop_neighbors(g, &p)?;
        if p != p_star && nbrs.len() % 2 == 1 {
            let cycle = close(g, &p).ok_or_else(|| {
                LollipopError::Falsified(format!(
                    "odd-degree path {:?} cannot be closed through its anchor",
                    p.vertices
                ))
            })?;
            if cycle.canonical() == original {
                return Err(LollipopError::Falsified(format!(
                    "odd-degree path {:?} closes back to the original cycle",
                    p.vertices
                )));
            }
            return Ok(SecondCycle {
                cycle: cycle.canonical(),
                route: SecondCycleRoute::Walk {
                    steps,
                    end_path: p.vertices,
                },
            });
        }
        for q in nbrs {
            if seen.insert(q.clone()) {
                queue.push_back((q, steps + 1));
            }
        }
    }
    Err(LollipopError::Falsified(format!(
        "component of {:?} has no other odd-degree path ({} paths visited)",
        p_star.vertices,
        seen.len()
    )))
}

/// `P + x_n x_1`, or `P + x_n u x_1` with the smallest `u` in `U_P`.
fn close(g: &Graph, p: &AnchoredPath) -> Option<CycleOrPath> {
    let x1 = p.vertices[0];
    let end = p.end();
    if p.vertices.len() >= 3 && g.has_edge(x1, end) {
        return Some(CycleOrPath::cycle(p.vertices.clone()));
    }
    let on = on_path(g, &p.vertices);
    let u = (0..g.n()).find(|&u| !on[u] && g.has_edge(u, x1) && g.has_edge(u, end))?;
    let mut vs = p.vertices.clone();
    vs.push(u);
    Some(CycleOrPath::cycle(vs))
}
