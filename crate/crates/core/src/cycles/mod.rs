//! Cycles and paths through a required linear forest: the exact longest
//! searches, chord and bridge inspection.

mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

pub use search::{
    cycle_at_least, cycles_through, enumerate_longest_cycles_through,
    enumerate_longest_paths_through, find_chordless_cycle_through, find_cycle_through,
    find_path_through, longer_cycle_through, longest_cycle_through, longest_path_through,
};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Node-expansion allowance shared by every search it is passed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Budget {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), SearchError> {
        self.used += 1;
        if self.used > self.limit {
            Err(SearchError::BudgetExhausted {
                nodes: self.used - 1,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    /// The search stopped before it could finish. Not the same as "none exists".
    #[error("search budget exhausted after {nodes} node expansions")]
    BudgetExhausted { nodes: u64 },
    #[error("exact search supports at most 64 vertices, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Required(#[from] RequiredSetError),
    #[error("path endpoints must differ, got {0} twice")]
    SameEndpoints(Vertex),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RequiredSetError {
    #[error("required edges meet at {0} more than twice")]
    Branching(Vertex),
    #[error("required edges close a cycle at {0}")]
    Cyclic(Edge),
    #[error("required edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("required vertex {0} is not in the graph")]
    MissingVertex(Vertex),
}

/// Required edges forming a linear forest, plus required vertices that are
/// not on any required edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RequiredSet {
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
}

impl RequiredSet {
    /// Vertices that lie on a required edge are absorbed into it.
    pub fn new<E, V>(edges: E, vertices: V) -> Result<RequiredSet, RequiredSetError>
    where
        E: IntoIterator<Item = Edge>,
        V: IntoIterator<Item = Vertex>,
    {
        let edges: Vec<Edge> = edges
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut root: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        fn find(root: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
            let p = *root.entry(v).or_insert(v);
            if p == v {
                return v;
            }
            let r = find(root, p);
            root.insert(v, r);
            r
        }
        for &e in &edges {
            for x in [e.u, e.v] {
                let d = deg.entry(x).or_insert(0);
                *d += 1;
                if *d > 2 {
                    return Err(RequiredSetError::Branching(x));
                }
            }
            let (a, b) = (find(&mut root, e.u), find(&mut root, e.v));
            if a == b {
                return Err(RequiredSetError::Cyclic(e));
            }
            root.insert(a, b);
        }
        let vertices = vertices
            .into_iter()
            .filter(|v| !deg.contains_key(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(RequiredSet { edges, vertices })
    }

    pub fn empty() -> RequiredSet {
        RequiredSet::default()
    }

    pub fn edge(e: Edge) -> RequiredSet {
        RequiredSet {
            edges: vec![e],
            vertices: Vec::new(),
        }
    }

    pub fn vertices_only<V: IntoIterator<Item = Vertex>>(vs: V) -> RequiredSet {
        RequiredSet::new([], vs).expect("no edges")
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Required vertices not covered by a required edge.
    pub fn isolated(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Every vertex a cycle through this set must visit.
    pub fn all_vertices(&self) -> BTreeSet<Vertex> {
        let mut s: BTreeSet<Vertex> = self.vertices.iter().copied().collect();
        for e in &self.edges {
            s.insert(e.u);
            s.insert(e.v);
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.vertices.is_empty()
    }

    /// Number of required edges.
    pub fn l(&self) -> usize {
        self.edges.len()
    }

    /// Number of required isolated vertices.
    pub fn t(&self) -> usize {
        self.vertices.len()
    }

    pub fn check_in(&self, g: &Graph) -> Result<(), RequiredSetError> {
        for &e in &self.edges {
            if !g.contains(e) {
                return Err(RequiredSetError::MissingEdge(e));
            }
        }
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(RequiredSetError::MissingVertex(v));
            }
        }
        Ok(())
    }

    pub fn is_covered_by(&self, w: &CycleOrPath) -> bool {
        self.vertices.iter().all(|&v| w.contains_vertex(v))
            && self.edges.iter().all(|&e| w.contains_edge(e))
    }
}

impl fmt::Display for RequiredSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.edges.iter().map(|e| format!("edge:{e}")).collect();
        parts.extend(self.vertices.iter().map(|v| format!("vertex:{v}")));
        if parts.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "{}", parts.join(";"))
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("vertex {0} repeats")]
    Repeated(Vertex),
    #[error("{0} is not an edge")]
    NotAnEdge(Edge),
    #[error("vertex {0} is not in the graph")]
    OutOfRange(Vertex),
    #[error("a cycle needs at least three vertices")]
    TooShort,
}

/// A cycle or a path, as its vertex sequence. A cycle's closing edge is
/// implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleOrPath {
    vertices: Vec<Vertex>,
    closed: bool,
}

impl CycleOrPath {
    pub fn cycle(vertices: Vec<Vertex>) -> CycleOrPath {
        CycleOrPath {
            vertices,
            closed: true,
        }
    }

    pub fn path(vertices: Vec<Vertex>) -> CycleOrPath {
        CycleOrPath {
            vertices,
            closed: false,
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.closed
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len().saturating_sub(1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let vs = &self.vertices;
        let mut out: Vec<Edge> = vs.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        if self.closed && vs.len() >= 3 {
            out.push(Edge::new(vs[vs.len() - 1], vs[0]));
        }
        out
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let (Some(i), Some(j)) = (self.position(e.u), self.position(e.v)) else {
            return false;
        };
        let k = self.vertices.len();
        let d = i.abs_diff(j);
        d == 1 || (self.closed && k >= 3 && d == k - 1)
    }

    pub fn reversed(&self) -> CycleOrPath {
        let mut vs = self.vertices.clone();
        vs.reverse();
        CycleOrPath {
            vertices: vs,
            closed: self.closed,
        }
    }

    /// Cycles start at their smallest vertex and continue towards the smaller
    /// of its two neighbours; paths are returned unchanged.
    pub fn canonical(&self) -> CycleOrPath {
        if !self.closed || self.vertices.len() < 3 {
            return self.clone();
        }
        let k = self.vertices.len();
        let i = (0..k).min_by_key(|&i| self.vertices[i]).unwrap();
        let mut vs: Vec<Vertex> = (0..k).map(|j| self.vertices[(i + j) % k]).collect();
        if vs[k - 1] < vs[1] {
            vs[1..].reverse();
        }
        CycleOrPath {
            vertices: vs,
            closed: true,
        }
    }

    pub fn check_in(&self, g: &Graph) -> Result<(), WalkError> {
        if self.closed && self.vertices.len() < 3 {
            return Err(WalkError::TooShort);
        }
        let mut seen = BTreeSet::new();
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(WalkError::OutOfRange(v));
            }
            if !seen.insert(v) {
                return Err(WalkError::Repeated(v));
            }
        }
        for e in self.edges() {
            if !g.contains(e) {
                return Err(WalkError::NotAnEdge(e));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CycleOrPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        if self.closed {
            write!(f, "({})", body.join(" "))
        } else {
            write!(f, "[{}]", body.join(" "))
        }
    }
}

/// A chord (no interior) or a component of `G - V(H)` together with its
/// attachments on `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub attachments: Vec<Vertex>,
    pub interior: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Bridge {
    pub fn is_chord(&self) -> bool {
        self.interior.is_empty()
    }
}

/// Bridges of the subgraph with vertex set `on` and edge set `skeleton`:
/// every edge outside `skeleton` with both ends in `on` is a chord bridge,
/// then one bridge per component of `G - on`.
pub fn bridges(g: &Graph, on: &[Vertex], skeleton: &[Edge]) -> Vec<Bridge> {
    let mut inside = vec![false; g.n()];
    for &v in on {
        inside[v] = true;
    }
    let skeleton: BTreeSet<Edge> = skeleton.iter().copied().collect();
    let mut out = Vec::new();
    for e in g.edges() {
        if inside[e.u] && inside[e.v] && !skeleton.contains(&e) {
            out.push(Bridge {
                attachments: vec![e.u, e.v],
                interior: Vec::new(),
                edges: vec![e],
            });
        }
    }
    for comp in g.components_avoiding(on) {
        let mut att = BTreeSet::new();
        let mut edges = Vec::new();
        for &v in &comp {
            for &w in g.neighbors(v) {
                if inside[w] {
                    att.insert(w);
                    edges.push(Edge::new(v, w));
                } else if v < w {
                    edges.push(Edge::new(v, w));
                }
            }
        }
        edges.sort_unstable();
        out.push(Bridge {
            attachments: att.into_iter().collect(),
            interior: comp,
            edges,
        });
    }
    out
}

/// Edges of `G[V(C)]` that are not edges of `C`.
pub fn chords_of(g: &Graph, c: &CycleOrPath) -> Vec<Edge> {
    let own: BTreeSet<Edge> = c.edges().into_iter().collect();
    let vs = c.vertices();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let e = Edge::new(a, b);
            if g.has_edge(a, b) && !own.contains(&e) {
                out.push(e);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn path_bridges(g: &Graph, p: &CycleOrPath) -> Vec<Bridge> {
    bridges(g, p.vertices(), &p.edges())
}

/// First internal vertex of `p`, in path order, whose whole neighbourhood
/// lies on `p`.
pub fn full_neighbor_internal_vertex(g: &Graph, p: &CycleOrPath) -> Option<Vertex> {
    let vs = p.vertices();
    if vs.len() < 3 {
        return None;
    }
    let on: BTreeSet<Vertex> = vs.iter().copied().collect();
    vs[1..vs.len() - 1]
        .iter()
        .copied()
        .find(|&v| g.neighbors(v).iter().all(|w| on.contains(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_set_absorbs_vertices_on_edges() {
        let r = RequiredSet::new([Edge::new(0, 1)], [1, 3]).unwrap();
        assert_eq!(r.isolated(), &[3]);
        assert_eq!((r.l(), r.t()), (1, 1));
    }

    #[test]
    fn required_set_rejects_branching_and_cycles() {
        let star = [Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)];
        assert_eq!(
            RequiredSet::new(star, []),
            Err(RequiredSetError::Branching(0))
        );
        let tri = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
        assert_eq!(
            RequiredSet::new(tri, []),
            Err(RequiredSetError::Cyclic(Edge::new(1, 2)))
        );
    }

    #[test]
    fn canonical_rotation() {
        let c = CycleOrPath::cycle(vec![3, 1, 4, 2]);
        assert_eq!(c.canonical().vertices(), &[1, 3, 2, 4]);
        assert_eq!(c.reversed().canonical(), c.canonical());
    }

    #[test]
    fn contains_closing_edge() {
        let c = CycleOrPath::cycle(vec![0, 1, 2, 3]);
        assert!(c.contains_edge(Edge::new(3, 0)));
        assert!(!c.contains_edge(Edge::new(0, 2)));
        let p = CycleOrPath::path(vec![0, 1, 2, 3]);
        assert!(!p.contains_edge(Edge::new(3, 0)));
    }

    #[test]
    fn k4_hamiltonian_cycle_has_two_chords() {
        let g = Graph::complete(4);
        let c = CycleOrPath::cycle(vec![0, 1, 2, 3]);
        assert_eq!(chords_of(&g, &c), vec![Edge::new(0, 2), Edge::new(1, 3)]);
    }

    #[test]
    fn bridges_of_a_path_in_k4() {
        let g = Graph::complete(4);
        let p = CycleOrPath::path(vec![0, 1, 2]);
        let bs = path_bridges(&g, &p);
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].edges, vec![Edge::new(0, 2)]);
        assert_eq!(bs[1].attachments, vec![0, 1, 2]);
        assert_eq!(bs[1].interior, vec![3]);
        assert_eq!(full_neighbor_internal_vertex(&g, &p), None);
        let q = CycleOrPath::path(vec![0, 1, 2, 3]);
        assert_eq!(full_neighbor_internal_vertex(&g, &q), Some(1));
    }

    #[test]
    fn walk_validation() {
        let g = Graph::cycle(4);
        assert!(CycleOrPath::cycle(vec![0, 1, 2, 3]).check_in(&g).is_ok());
        assert_eq!(
            CycleOrPath::cycle(vec![0, 1, 3, 2]).check_in(&g),
            Err(WalkError::NotAnEdge(Edge::new(1, 3)))
        );
        assert_eq!(
            CycleOrPath::cycle(vec![0, 1]).check_in(&g),
            Err(WalkError::TooShort)
        );
    }
}
