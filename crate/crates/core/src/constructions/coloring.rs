use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cycles::CycleOrPath;
use crate::graph::{Edge, Graph, Image, Vertex, VertexMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleSystemError {
    #[error("{0} vertices is not a positive multiple of 3")]
    Size(usize),
    #[error("vertex {0} does not have degree 4")]
    NotRegular(Vertex),
    #[error("cycle is not a Hamiltonian cycle of the host")]
    NotHamiltonian,
    #[error("triangles do not partition the vertex set")]
    NotPartition,
    #[error("edge {0} is on the cycle and a triangle, or on neither")]
    NotDecomposition(Edge),
}

/// A 4-regular graph on `3p` vertices split into a Hamiltonian cycle and
/// `p` vertex-disjoint triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSystem {
    host: Graph,
    hamiltonian: CycleOrPath,
    triangles: Vec<[Vertex; 3]>,
}

impl TriangleSystem {
    pub fn new(
        host: Graph,
        hamiltonian: CycleOrPath,
        triangles: Vec<[Vertex; 3]>,
    ) -> Result<TriangleSystem, TriangleSystemError> {
        let n = host.n();
        if n == 0 || n % 3 != 0 {
            return Err(TriangleSystemError::Size(n));
        }
        if let Some(v) = (0..n).find(|&v| host.degree(v) != 4) {
            return Err(TriangleSystemError::NotRegular(v));
        }
        if !hamiltonian.is_cycle() || hamiltonian.order() != n || hamiltonian.check_in(&host).is_err() {
            return Err(TriangleSystemError::NotHamiltonian);
        }
        let mut covered = vec![false; n];
        for t in &triangles {
            for &v in t {
                if v >= n || covered[v] {
                    return Err(TriangleSystemError::NotPartition);
                }
                covered[v] = true;
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(TriangleSystemError::NotPartition);
        }
        let cycle: BTreeSet<Edge> = hamiltonian.edges().into_iter().collect();
        let mut tri = BTreeSet::new();
        for t in &triangles {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let e = Edge::new(a, b);
                if cycle.contains(&e) || !host.contains(e) {
                    return Err(TriangleSystemError::NotDecomposition(e));
                }
                tri.insert(e);
            }
        }
        if let Some(e) = host.edges().find(|e| !cycle.contains(e) && !tri.contains(e)) {
            return Err(TriangleSystemError::NotDecomposition(e));
        }
        Ok(TriangleSystem {
            host,
            hamiltonian,
            triangles,
        })
    }

    /// `C_6` plus triangles `{0, 2, 4}` and `{1, 3, 5}`.
    pub fn octahedron() -> TriangleSystem {
        let host = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5)],
        )
        .unwrap();
        TriangleSystem::new(host, CycleOrPath::cycle((0..6).collect()), vec![[0, 2, 4], [1, 3, 5]]).unwrap()
    }

    /// A random Hamiltonian cycle and a random triangle partition avoiding
    /// its edges, on `3p` vertices. Deterministic in `seed`; `p >= 2`.
    pub fn random(p: usize, seed: u64) -> Option<TriangleSystem> {
        if p < 2 {
            return None;
        }
        let n = 3 * p;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<Vertex> = (0..n).collect();
        let mut parts: Vec<Vertex> = (0..n).collect();
        for _ in 0..100_000 {
            order.shuffle(&mut rng);
            parts.shuffle(&mut rng);
            let cycle = CycleOrPath::cycle(order.clone());
            let edges: BTreeSet<Edge> = cycle.edges().into_iter().collect();
            let triangles: Vec<[Vertex; 3]> = parts
                .chunks(3)
                .map(|c| {
                    let mut t = [c[0], c[1], c[2]];
                    t.sort_unstable();
                    t
                })
                .collect();
            let clash = triangles.iter().any(|t| {
                [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                    .iter()
                    .any(|&(a, b)| edges.contains(&Edge::new(a, b)))
            });
            if clash {
                continue;
            }
            let mut host = Graph::new(n);
            for e in &edges {
                host.add_edge(e.u, e.v);
            }
            for t in &triangles {
                host.add_edge(t[0], t[1]);
                host.add_edge(t[0], t[2]);
                host.add_edge(t[1], t[2]);
            }
            let mut triangles = triangles;
            triangles.sort_unstable();
            return TriangleSystem::new(host, cycle.canonical(), triangles).ok();
        }
        None
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn hamiltonian(&self) -> &CycleOrPath {
        &self.hamiltonian
    }

    pub fn triangles(&self) -> &[[Vertex; 3]] {
        &self.triangles
    }
}

/// A proper coloring with colors `0..k`, by backtracking in vertex order
/// with the first vertex fixed to color 0.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    fn go(g: &Graph, k: usize, v: usize, color: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        // Colors above the largest one used so far are interchangeable.
        let used = color[..v].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|&w| color[w] != c) {
                color[v] = c;
                if go(g, k, v + 1, color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    go(g, k, 0, &mut color).then_some(color)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("no proper 3-coloring exists")]
    Falsified,
    #[error("no color class avoids the forbidden vertices")]
    NoClass,
}

pub fn triangle_3coloring(t: &TriangleSystem) -> Result<Vec<usize>, ColoringError> {
    k_coloring(&t.host, 3).ok_or(ColoringError::Falsified)
}

/// Color classes, ordered by their smallest vertex.
pub fn color_classes(coloring: &[usize]) -> Vec<Vec<Vertex>> {
    let k = coloring.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); k];
    for (v, &c) in coloring.iter().enumerate() {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    classes.sort();
    classes
}

/// The first color class containing no image of `forbidden`, pulled back
/// through `provenance` (source coordinates to coloring coordinates).
pub fn select_red_class(
    coloring: &[usize],
    forbidden: &[Vertex],
    provenance: &VertexMap,
) -> Result<Vec<Vertex>, ColoringError> {
    let banned: BTreeSet<Vertex> = forbidden
        .iter()
        .filter_map(|&v| match provenance.image(v) {
            Image::Vertex(t) => Some(t),
            _ => None,
        })
        .collect();
    let class = color_classes(coloring)
        .into_iter()
        .find(|c| c.iter().all(|v| !banned.contains(v)))
        .ok_or(ColoringError::NoClass)?;
    let mut out: Vec<Vertex> = class.iter().flat_map(|&t| provenance.preimage(t)).collect();
    out.sort_unstable();
    Ok(out)
}
