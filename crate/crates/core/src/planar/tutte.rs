use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{walk_edges, Embedding};
use crate::connectivity::is_k_connected;
use crate::cycles::{bridges, cycles_through, Budget, CycleOrPath, RequiredSet, SearchError};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TutteError {
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
    #[error("{0} and {1} do not share exactly one endpoint")]
    NotAdjacent(Edge, Edge),
    #[error("{1} is not on a face incident with {0}")]
    NotOnFace(Edge, Edge),
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("too many edges for the batch search")]
    TooLarge,
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("no cycle through {0} and {1} meets the bridge conditions")]
    Falsified(Edge, Edge),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeDiagnostic {
    pub attachments: Vec<Vertex>,
    pub interior: Vec<Vertex>,
    /// Has an edge on the boundary of one of the two faces at `e`.
    pub on_faces: bool,
}

impl BridgeDiagnostic {
    pub fn at_most_three(&self) -> bool {
        self.attachments.len() <= 3
    }

    pub fn face_ok(&self) -> bool {
        !self.on_faces || self.attachments.len() <= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteReport {
    pub contains_e: bool,
    pub contains_e_prime: bool,
    pub bridges: Vec<BridgeDiagnostic>,
}

impl TutteReport {
    pub fn condition_i(&self) -> bool {
        self.contains_e && self.contains_e_prime
    }

    pub fn condition_ii(&self) -> bool {
        self.bridges.iter().all(BridgeDiagnostic::at_most_three)
    }

    pub fn condition_iii(&self) -> bool {
        self.bridges.iter().all(BridgeDiagnostic::face_ok)
    }

    pub fn holds(&self) -> bool {
        self.condition_i() && self.condition_ii() && self.condition_iii()
    }
}

fn face_boundary(emb: &Embedding, e: Edge) -> Option<BTreeSet<Edge>> {
    let (a, b) = emb.faces_at(e)?;
    let faces = emb.faces();
    Some(
        walk_edges(&faces[a])
            .into_iter()
            .chain(walk_edges(&faces[b]))
            .collect(),
    )
}

fn report(g: &Graph, c: &CycleOrPath, e: Edge, e_prime: Edge, boundary: &BTreeSet<Edge>) -> TutteReport {
    let bridges = bridges(g, c.vertices(), &c.edges())
        .into_iter()
        .map(|b| BridgeDiagnostic {
            on_faces: b.edges.iter().any(|f| boundary.contains(f)),
            attachments: b.attachments,
            interior: b.interior,
        })
        .collect();
    TutteReport {
        contains_e: c.contains_edge(e),
        contains_e_prime: c.contains_edge(e_prime),
        bridges,
    }
}

/// Evaluates the three conditions for cycle `c` against the faces at `e`.
pub fn tutte_conditions_check(g: &Graph, emb: &Embedding, c: &CycleOrPath, e: Edge, e_prime: Edge) -> TutteReport {
    let boundary = face_boundary(emb, e).unwrap_or_default();
    report(g, c, e, e_prime, &boundary)
}

fn precondition(g: &Graph, emb: &Embedding, e: Edge, e_prime: Edge) -> Result<BTreeSet<Edge>, TutteError> {
    for f in [e, e_prime] {
        if !g.contains(f) {
            return Err(TutteError::MissingEdge(f));
        }
    }
    if e == e_prime || !e.shares_endpoint(e_prime) {
        return Err(TutteError::NotAdjacent(e, e_prime));
    }
    let boundary = face_boundary(emb, e).ok_or(TutteError::MissingEdge(e))?;
    if !boundary.contains(&e_prime) {
        return Err(TutteError::NotOnFace(e, e_prime));
    }
    Ok(boundary)
}

/// The shortest cycle through `e` and `e_prime` meeting all three
/// conditions, ties broken by canonical rotation.
pub fn tutte_cycle(
    g: &Graph,
    emb: &Embedding,
    e: Edge,
    e_prime: Edge,
    budget: &mut Budget,
) -> Result<CycleOrPath, TutteError> {
    let boundary = precondition(g, emb, e, e_prime)?;
    if !is_k_connected(g, 2) {
        return Err(TutteError::NotBiconnected);
    }
    let r = RequiredSet::new([e, e_prime], []).expect("two edges with one common end");
    cycles_through(g, &r, budget)?
        .into_iter()
        .find(|c| report(g, c, e, e_prime, &boundary).holds())
        .ok_or(TutteError::Falsified(e, e_prime))
}

/// Every ordered pair `(e, e')` with `e'` adjacent to `e` on a face at `e`.
pub fn tutte_pairs(g: &Graph, emb: &Embedding) -> Vec<(Edge, Edge)> {
    let mut out = Vec::new();
    for e in g.edges() {
        let Some(boundary) = face_boundary(emb, e) else {
            continue;
        };
        for &f in &boundary {
            if f != e && f.shares_endpoint(e) {
                out.push((e, f));
            }
        }
    }
    out
}

/// All cycles of one graph enumerated once, for answering many `(e, e')`
/// queries against the same embedding. Bridge conditions are evaluated on
/// bitmasks.
pub struct TutteCycles<'a> {
    g: &'a Graph,
    emb: &'a Embedding,
    adj: Vec<u64>,
    edges: Vec<Edge>,
    /// Edges incident with each vertex.
    incident: Vec<u64>,
    /// Edges on the two faces at each edge.
    boundary: Vec<u64>,
    /// (edge mask, vertex mask, cycle), by length then canonical form.
    cycles: Vec<(u64, u64, CycleOrPath)>,
}

impl<'a> TutteCycles<'a> {
    pub fn new(g: &'a Graph, emb: &'a Embedding, budget: &mut Budget) -> Result<TutteCycles<'a>, TutteError> {
        if g.m() > 64 {
            return Err(TutteError::TooLarge);
        }
        if !is_k_connected(g, 2) {
            return Err(TutteError::NotBiconnected);
        }
        let adj = g.masks().ok_or(TutteError::TooLarge)?;
        let edges: Vec<Edge> = g.edges().collect();
        let bit = |f: &Edge| 1u64 << edges.binary_search(f).unwrap();
        let mut incident = vec![0u64; g.n()];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u] |= 1 << i;
            incident[e.v] |= 1 << i;
        }
        let faces: Vec<u64> = emb
            .faces()
            .iter()
            .map(|f| walk_edges(f).iter().fold(0, |m, e| m | bit(e)))
            .collect();
        let (_, face_of) = emb.trace();
        let boundary = edges
            .iter()
            .map(|e| {
                let i = emb.rotation(e.u).iter().position(|&x| x == e.v).unwrap();
                let j = emb.rotation(e.v).iter().position(|&x| x == e.u).unwrap();
                faces[face_of[e.u][i]] | faces[face_of[e.v][j]]
            })
            .collect();
        let cycles = cycles_through(g, &RequiredSet::empty(), budget)?
            .into_iter()
            .map(|c| {
                let em = c.edges().iter().fold(0u64, |m, f| m | bit(f));
                let vm = c.vertices().iter().fold(0u64, |m, &v| m | 1 << v);
                (em, vm, c)
            })
            .collect();
        Ok(TutteCycles {
            g,
            emb,
            adj,
            edges,
            incident,
            boundary,
            cycles,
        })
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Conditions (ii) and (iii) for the cycle on `on`. Chord bridges have
    /// two attachments and always pass, so only components are examined.
    fn bridges_ok(&self, on: u64, boundary: u64) -> bool {
        let all = if self.g.n() == 64 { u64::MAX } else { (1u64 << self.g.n()) - 1 };
        let mut rest = all & !on;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & rest & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            let mut att = 0u64;
            let mut touched = 0u64;
            let mut c = comp;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                att |= self.adj[v] & on;
                touched |= self.incident[v];
            }
            let k = att.count_ones();
            if k > 3 || (k > 2 && touched & boundary != 0) {
                return false;
            }
        }
        true
    }

    /// Same answer as [`tutte_cycle`].
    pub fn find(&self, e: Edge, e_prime: Edge) -> Result<CycleOrPath, TutteError> {
        let (Ok(i), Ok(j)) = (self.edges.binary_search(&e), self.edges.binary_search(&e_prime)) else {
            return Err(TutteError::MissingEdge(if self.g.contains(e) { e_prime } else { e }));
        };
        if e == e_prime || !e.shares_endpoint(e_prime) {
            return Err(TutteError::NotAdjacent(e, e_prime));
        }
        let boundary = self.boundary[i];
        if boundary >> j & 1 == 0 {
            return Err(TutteError::NotOnFace(e, e_prime));
        }
        let want = 1u64 << i | 1u64 << j;
        self.cycles
            .iter()
            .filter(|(em, _, _)| em & want == want)
            .find(|(_, vm, _)| self.bridges_ok(*vm, boundary))
            .map(|(_, _, c)| c.clone())
            .ok_or(TutteError::Falsified(e, e_prime))
    }

    pub fn embedding(&self) -> &Embedding {
        self.emb
    }

    /// Same list as [`tutte_pairs`].
    pub fn pairs(&self) -> Vec<(Edge, Edge)> {
        let mut out = Vec::new();
        for (i, &e) in self.edges.iter().enumerate() {
            for (j, &f) in self.edges.iter().enumerate() {
                if self.boundary[i] >> j & 1 == 1 && f != e && f.shares_endpoint(e) {
                    out.push((e, f));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::planar_embedding;

    #[test]
    fn k4_adjacent_edges_need_a_hamiltonian_cycle() {
        let g = Graph::complete(4);
        let emb = planar_embedding(&g).unwrap();
        let (e, f) = (Edge::new(0, 1), Edge::new(1, 2));
        let c = tutte_cycle(&g, &emb, e, f, &mut Budget::unlimited()).unwrap();
        assert_eq!(c.order(), 4);
        let rep = tutte_conditions_check(&g, &emb, &c, e, f);
        assert!(rep.holds());
        assert_eq!(rep.bridges.len(), 2);
        assert!(rep.bridges.iter().all(|b| b.attachments.len() == 2));
    }

    #[test]
    fn k4_triangle_lists_the_three_attachment_bridge() {
        let g = Graph::complete(4);
        let emb = planar_embedding(&g).unwrap();
        let (e, f) = (Edge::new(0, 1), Edge::new(1, 2));
        let t = CycleOrPath::cycle(vec![0, 1, 2]);
        let rep = tutte_conditions_check(&g, &emb, &t, e, f);
        assert!(rep.condition_i() && rep.condition_ii());
        assert_eq!(rep.bridges.len(), 1);
        assert_eq!(rep.bridges[0].attachments, vec![0, 1, 2]);
        // Both faces at 0-1 are triangles and the other one reaches vertex 3.
        assert!(!rep.condition_iii());
        let other = CycleOrPath::cycle(vec![0, 2, 3]);
        assert!(!tutte_conditions_check(&g, &emb, &other, e, f).condition_i());
    }

    #[test]
    fn chordless_cycle_is_its_own_answer() {
        let g = Graph::cycle(6);
        let emb = planar_embedding(&g).unwrap();
        let c = tutte_cycle(&g, &emb, Edge::new(0, 1), Edge::new(1, 2), &mut Budget::unlimited()).unwrap();
        assert_eq!(c.order(), 6);
    }

    #[test]
    fn batch_agrees_with_single_queries() {
        for g in [Graph::octahedron(), Graph::complete(4), Graph::complete_bipartite(2, 4)] {
            let emb = planar_embedding(&g).unwrap();
            let batch = TutteCycles::new(&g, &emb, &mut Budget::unlimited()).unwrap();
            let pairs = tutte_pairs(&g, &emb);
            assert!(!pairs.is_empty());
            assert_eq!(batch.pairs(), pairs);
            for (e, f) in pairs {
                let one = tutte_cycle(&g, &emb, e, f, &mut Budget::unlimited()).unwrap();
                assert_eq!(batch.find(e, f).unwrap(), one);
                assert!(tutte_conditions_check(&g, &emb, &one, e, f).holds());
            }
        }
    }

    #[test]
    fn preconditions() {
        let g = Graph::octahedron();
        let emb = planar_embedding(&g).unwrap();
        let mut b = Budget::unlimited();
        assert_eq!(
            tutte_cycle(&g, &emb, Edge::new(0, 3), Edge::new(0, 1), &mut b),
            Err(TutteError::MissingEdge(Edge::new(0, 3)))
        );
        assert_eq!(
            tutte_cycle(&g, &emb, Edge::new(0, 1), Edge::new(2, 4), &mut b),
            Err(TutteError::NotAdjacent(Edge::new(0, 1), Edge::new(2, 4)))
        );
        let path = Graph::path(3);
        let pe = planar_embedding(&path).unwrap();
        assert_eq!(
            tutte_cycle(&path, &pe, Edge::new(0, 1), Edge::new(1, 2), &mut b),
            Err(TutteError::NotBiconnected)
        );
    }
}
