//! Planarity, rotation systems and face walks, plus cycles satisfying the
//! bridge conditions of Tutte's lemma.

mod lr;
mod tutte;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

pub use tutte::{
    tutte_conditions_check, tutte_cycle, tutte_pairs, BridgeDiagnostic, TutteCycles, TutteError,
    TutteReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {got} vertices, graph has {want}")]
    Size { got: usize, want: usize },
    #[error("rotation at {0} is not a permutation of its neighbours")]
    NotNeighbors(Vertex),
}

/// A rotation system: the clockwise cyclic order of neighbours around each
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    rotation: Vec<Vec<Vertex>>,
    face_count: usize,
}

impl Embedding {
    pub fn from_rotation(g: &Graph, rotation: Vec<Vec<Vertex>>) -> Result<Embedding, EmbeddingError> {
        if rotation.len() != g.n() {
            return Err(EmbeddingError::Size {
                got: rotation.len(),
                want: g.n(),
            });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbeddingError::NotNeighbors(v));
            }
        }
        let mut e = Embedding {
            rotation,
            face_count: 0,
        };
        e.face_count = e.trace().0.len();
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    /// The mirror image: every rotation reversed.
    pub fn reflected(&self) -> Embedding {
        Embedding {
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            face_count: self.face_count,
        }
    }

    /// Neighbour of `w` that precedes `v` in the rotation at `w`.
    fn before(&self, w: Vertex, v: Vertex) -> Vertex {
        let rot = &self.rotation[w];
        let i = rot.iter().position(|&x| x == v).expect("v is a neighbour of w");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Face walks plus, per dart `(v, rotation[v][i])`, the index of the face
    /// it bounds.
    pub(crate) fn trace(&self) -> (Vec<Vec<Vertex>>, Vec<Vec<usize>>) {
        let mut face_of: Vec<Vec<usize>> = self.rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..self.n() {
            let mut order: Vec<usize> = (0..self.rotation[v].len()).collect();
            order.sort_by_key(|&i| self.rotation[v][i]);
            for i in order {
                if face_of[v][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut a, mut b) = (v, self.rotation[v][i]);
                loop {
                    let j = self.rotation[a].iter().position(|&x| x == b).unwrap();
                    if face_of[a][j] != usize::MAX {
                        break;
                    }
                    face_of[a][j] = id;
                    walk.push(a);
                    let c = self.before(b, a);
                    a = b;
                    b = c;
                }
                faces.push(walk);
            }
        }
        (faces, face_of)
    }

    /// Every face boundary as a closed walk of vertices.
    pub fn faces(&self) -> Vec<Vec<Vertex>> {
        self.trace().0
    }

    /// The faces on the two sides of edge `e` (equal for a cut edge).
    pub fn faces_at(&self, e: Edge) -> Option<(usize, usize)> {
        let (_, face_of) = self.trace();
        let i = self.rotation.get(e.u)?.iter().position(|&x| x == e.v)?;
        let j = self.rotation[e.v].iter().position(|&x| x == e.u)?;
        Some((face_of[e.u][i], face_of[e.v][j]))
    }

    /// Euler's formula summed over components: tracing gives each component
    /// its own outer face, and an isolated vertex counts as one face.
    pub fn euler_holds(&self, g: &Graph) -> bool {
        let c = g.components().len() as i64;
        let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count() as i64;
        g.n() as i64 - g.m() as i64 + self.face_count as i64 + isolated == 2 * c
    }
}

/// Edges of a closed walk.
pub fn walk_edges(walk: &[Vertex]) -> Vec<Edge> {
    (0..walk.len())
        .filter(|_| walk.len() > 1)
        .map(|i| Edge::new(walk[i], walk[(i + 1) % walk.len()]))
        .collect()
}

/// A rotation system if `g` is planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let rot = lr::rotation_system(g)?;
    Some(Embedding::from_rotation(g, rot).expect("left-right embedding covers every edge"))
}

pub fn is_planar(g: &Graph) -> bool {
    lr::rotation_system(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face_lengths(g: &Graph) -> Vec<usize> {
        let e = planar_embedding(g).unwrap();
        assert!(e.euler_holds(g));
        let mut l: Vec<usize> = e.faces().iter().map(|f| f.len()).collect();
        l.sort_unstable();
        l
    }

    #[test]
    fn small_embeddings() {
        assert_eq!(face_lengths(&Graph::complete(4)), vec![3; 4]);
        assert_eq!(face_lengths(&Graph::octahedron()), vec![3; 8]);
        assert_eq!(face_lengths(&Graph::cycle(6)), vec![6, 6]);
        assert_eq!(face_lengths(&Graph::path(3)), vec![4]);
        assert!(planar_embedding(&Graph::complete(5)).is_none());
        assert!(planar_embedding(&Graph::complete_bipartite(3, 3)).is_none());
        assert!(planar_embedding(&Graph::petersen()).is_none());
        assert!(is_planar(&Graph::complete_bipartite(2, 5)));
    }

    #[test]
    fn euler_with_several_components() {
        let mut g = Graph::new(8);
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4)] {
            g.add_edge(a, b);
        }
        let e = planar_embedding(&g).unwrap();
        assert!(e.euler_holds(&g));
        assert!(planar_embedding(&Graph::new(3)).unwrap().euler_holds(&Graph::new(3)));
    }

    #[test]
    fn reflection_keeps_faces() {
        let g = Graph::octahedron();
        let e = planar_embedding(&g).unwrap();
        let key = |e: &Embedding| {
            let mut fs: Vec<Vec<Edge>> = e
                .faces()
                .iter()
                .map(|f| {
                    let mut es = walk_edges(f);
                    es.sort_unstable();
                    es
                })
                .collect();
            fs.sort();
            fs
        };
        assert_eq!(key(&e), key(&e.reflected()));
    }

    #[test]
    fn rejects_bad_rotation() {
        let g = Graph::complete(3);
        assert_eq!(
            Embedding::from_rotation(&g, vec![vec![1, 2], vec![0], vec![0, 1]]),
            Err(EmbeddingError::NotNeighbors(1))
        );
    }
}
