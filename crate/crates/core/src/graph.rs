//! Simple undirected graphs on `0..n` plus the editing operations used by the
//! constructions. Every editing operation returns a [`VertexMap`] so that a
//! vertex of the input can be traced into the output.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        debug_assert_ne!(a, b, "loops are not edges");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn has(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: Vertex) -> Vertex {
        debug_assert!(self.has(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_endpoint(self, f: Edge) -> bool {
        self != f && (f.has(self.u) || f.has(self.v))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
}

/// Simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds the simple-graph closure of the given edge list: loops are
    /// dropped and parallel edges merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.check(a)?;
            g.check(b)?;
            if a != b {
                g.add_edge(a, b);
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Adds `ab` unless it is a loop or already present; returns whether the
    /// edge set changed.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        if a == b {
            return false;
        }
        match self.adj[a].binary_search(&b) {
            Ok(_) => false,
            Err(i) => {
                self.adj[a].insert(i, b);
                let j = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(j, a);
                self.m += 1;
                true
            }
        }
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        match self.adj[a].binary_search(&b) {
            Ok(i) => {
                self.adj[a].remove(i);
                let j = self.adj[b].binary_search(&a).unwrap();
                self.adj[b].remove(j);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| Edge { u, v })
        })
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|ns| ns.len() == k)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n == 0 || self.is_regular(n - 1)
    }

    /// Adjacency rows as bit masks, available when `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |acc, &w| acc | 1 << w))
                .collect(),
        )
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&[])
    }

    /// Components of `G - removed`.
    pub fn components_avoiding(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for x in 0..a {
            for y in a..a + b {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// Outer 5-cycle `0..5`, spokes `i - (i+5)`, inner pentagram.
    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Octahedron: `C_6` on `0..6` plus triangles `{0,2,4}` and `{1,3,5}`.
    pub fn octahedron() -> Graph {
        let mut g = Graph::complete(6);
        for i in 0..3 {
            g.remove_edge(i, i + 3);
        }
        g
    }

    /// Subgraph induced by `keep`; vertices are renumbered in the order of `keep`.
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, VertexMap) {
        let mut images = vec![Image::Gone; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            images[v] = Image::Vertex(i);
        }
        let mut h = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Image::Vertex(j) = images[w] {
                    if i < j {
                        h.add_edge(i, j);
                    }
                }
            }
        }
        (h, VertexMap::from_images(images, keep.len()))
    }

    /// Deletes `v`; later ids shift down by one.
    pub fn delete_vertex(&self, v: Vertex) -> Result<(Graph, VertexMap), GraphError> {
        self.check(v)?;
        let keep: Vec<Vertex> = (0..self.n()).filter(|&w| w != v).collect();
        Ok(self.induced(&keep))
    }

    pub fn delete_edge(&self, e: Edge) -> Result<(Graph, VertexMap), GraphError> {
        if !self.contains(e) {
            return Err(GraphError::MissingEdge(e));
        }
        let mut h = self.clone();
        h.remove_edge(e.u, e.v);
        Ok((h, VertexMap::identity(self.n())))
    }

    pub fn with_edge(&self, a: Vertex, b: Vertex) -> Result<(Graph, VertexMap), GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(GraphError::Loop(a));
        }
        let mut h = self.clone();
        h.add_edge(a, b);
        Ok((h, VertexMap::identity(self.n())))
    }

    /// Contracts `e` into its smaller endpoint, then takes the simple-graph
    /// closure. The larger endpoint disappears and later ids shift down.
    pub fn contract_edge(&self, e: Edge) -> Result<(Graph, VertexMap), GraphError> {
        if !self.contains(e) {
            return Err(GraphError::MissingEdge(e));
        }
        self.merge(e.u, e.v)
    }

    /// Identifies `keep` and `gone` whether or not they are adjacent.
    pub fn merge(&self, keep: Vertex, gone: Vertex) -> Result<(Graph, VertexMap), GraphError> {
        self.check(keep)?;
        self.check(gone)?;
        if keep == gone {
            return Err(GraphError::Loop(keep));
        }
        let shift = |w: Vertex| if w > gone { w - 1 } else { w };
        let mut images: Vec<Image> = (0..self.n()).map(|w| Image::Vertex(shift(w))).collect();
        images[gone] = Image::Vertex(shift(keep));
        let mut h = Graph::new(self.n() - 1);
        for e in self.edges() {
            let a = if e.u == gone { keep } else { e.u };
            let b = if e.v == gone { keep } else { e.v };
            if a != b {
                h.add_edge(shift(a), shift(b));
            }
        }
        Ok((h, VertexMap::from_images(images, self.n() - 1)))
    }

    /// Repeatedly removes an unprotected vertex of degree two and joins its
    /// neighbours, smallest such vertex first.
    pub fn suppress_degree_two(&self, protected: &BTreeSet<Vertex>) -> (Graph, VertexMap) {
        let n = self.n();
        let mut h = self.clone();
        let mut alive = vec![true; n];
        let mut absorbed: Vec<Option<(Vertex, Vertex)>> = vec![None; n];
        let mut order = Vec::new();
        loop {
            let pick = (0..n).find(|&v| alive[v] && !protected.contains(&v) && h.degree(v) == 2);
            let Some(v) = pick else { break };
            let (a, b) = (h.adj[v][0], h.adj[v][1]);
            h.remove_edge(v, a);
            h.remove_edge(v, b);
            h.add_edge(a, b);
            alive[v] = false;
            absorbed[v] = Some((a, b));
            order.push(v);
        }
        let keep: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
        let (out, map) = h.induced(&keep);
        let mut images = map.images;
        // Later suppressions can swallow the endpoints recorded earlier, so
        // resolve in reverse order of removal.
        for &v in order.iter().rev() {
            let (a, b) = absorbed[v].unwrap();
            images[v] = join_images(&images[a], &images[b]);
        }
        (out, VertexMap::from_images(images, keep.len()))
    }

    /// Vertices of odd degree, ascending.
    pub fn odd_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degree(v) % 2 == 1).collect()
    }
}

fn join_images(a: &Image, b: &Image) -> Image {
    match (a, b) {
        (Image::Vertex(x), Image::Vertex(y)) if x == y => Image::Vertex(*x),
        (Image::Vertex(x), Image::Vertex(y)) => Image::Edge(Edge::new(*x, *y)),
        (Image::Edge(e), Image::Vertex(x)) | (Image::Vertex(x), Image::Edge(e)) if e.has(*x) => {
            Image::Edge(*e)
        }
        (Image::Edge(e), Image::Edge(f)) if e == f => Image::Edge(*e),
        _ => Image::Gone,
    }
}

/// Where a vertex of the source graph ended up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Image {
    /// Survives as, or was merged into, this vertex.
    Vertex(Vertex),
    /// Was suppressed into this edge.
    Edge(Edge),
    /// Was deleted.
    Gone,
}

/// Provenance of an editing operation: one [`Image`] per source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    images: Vec<Image>,
    target_n: usize,
}

impl VertexMap {
    pub fn identity(n: usize) -> VertexMap {
        VertexMap {
            images: (0..n).map(Image::Vertex).collect(),
            target_n: n,
        }
    }

    pub fn from_images(images: Vec<Image>, target_n: usize) -> VertexMap {
        VertexMap { images, target_n }
    }

    pub fn source_n(&self) -> usize {
        self.images.len()
    }

    pub fn target_n(&self) -> usize {
        self.target_n
    }

    pub fn image(&self, v: Vertex) -> Image {
        self.images[v]
    }

    /// The surviving vertex `v` maps to, if it maps to a vertex.
    pub fn vertex(&self, v: Vertex) -> Option<Vertex> {
        match self.images[v] {
            Image::Vertex(w) => Some(w),
            _ => None,
        }
    }

    /// Source vertices whose image is exactly the vertex `t`.
    pub fn preimage(&self, t: Vertex) -> Vec<Vertex> {
        (0..self.images.len())
            .filter(|&v| self.images[v] == Image::Vertex(t))
            .collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &VertexMap) -> VertexMap {
        let images = self
            .images
            .iter()
            .map(|im| match *im {
                Image::Vertex(w) => next.images[w],
                Image::Edge(e) => join_images(&next.images[e.u], &next.images[e.v]),
                Image::Gone => Image::Gone,
            })
            .collect();
        VertexMap {
            images,
            target_n: next.target_n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_drops_loops_and_parallels() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (2, 2), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(2, 2));
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        let err = Graph::from_edges(2, [(0, 2)]).unwrap_err();
        assert_eq!(err, GraphError::VertexOutOfRange { vertex: 2, n: 2 });
    }

    #[test]
    fn petersen_is_cubic() {
        let g = Graph::petersen();
        assert!(g.is_regular(3));
        assert_eq!(g.m(), 15);
    }

    #[test]
    fn octahedron_misses_antipodes() {
        let g = Graph::octahedron();
        assert!(g.is_regular(4));
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 4) && !g.has_edge(2, 5));
    }

    #[test]
    fn contracting_a_triangle_edge_merges_parallels() {
        let (h, map) = Graph::complete(3).contract_edge(Edge::new(1, 2)).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.m(), 1);
        assert_eq!(map.vertex(2), Some(1));
        assert_eq!(map.vertex(1), Some(1));
        assert_eq!(map.vertex(0), Some(0));
    }

    #[test]
    fn deletion_shifts_ids() {
        let (h, map) = Graph::path(4).delete_vertex(1).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(map.image(1), Image::Gone);
        assert_eq!(map.vertex(3), Some(2));
        assert!(h.has_edge(1, 2));
        assert_eq!(h.m(), 1);
    }

    #[test]
    fn suppressing_a_cycle_down_to_a_triangle() {
        let protected: BTreeSet<_> = [0, 2, 4].into_iter().collect();
        let (h, map) = Graph::cycle(6).suppress_degree_two(&protected);
        assert_eq!(h, Graph::complete(3));
        assert_eq!(map.image(1), Image::Edge(Edge::new(0, 1)));
        assert_eq!(map.vertex(4), Some(2));
    }

    #[test]
    fn chained_suppression_records_the_final_edge() {
        let protected: BTreeSet<_> = [0, 3].into_iter().collect();
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (3, 4)]).unwrap();
        let (h, map) = g.suppress_degree_two(&protected);
        assert_eq!(h.n(), 2);
        assert_eq!(map.image(1), Image::Edge(Edge::new(0, 1)));
        assert_eq!(map.image(2), Image::Edge(Edge::new(0, 1)));
        assert_eq!(map.image(4), Image::Edge(Edge::new(0, 1)));
    }

    #[test]
    fn composition_follows_both_steps() {
        let g = Graph::cycle(5);
        let (h, a) = g.contract_edge(Edge::new(0, 1)).unwrap();
        let (_, b) = h.delete_vertex(0).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.image(1), Image::Gone);
        assert_eq!(ab.vertex(4), Some(2));
    }
}
