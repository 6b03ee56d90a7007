//! Vertex connectivity by unit-capacity max-flow on the vertex-split graph,
//! and 3-separations that split a cycle.

use serde::{Deserialize, Serialize};

use crate::cycles::CycleOrPath;
use crate::graph::{Graph, Vertex};

struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl Flow {
    fn new(nodes: usize) -> Flow {
        Flow {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut via = vec![usize::MAX; self.head.len()];
        while flow < limit {
            via.iter_mut().for_each(|x| *x = usize::MAX);
            let mut queue = vec![s];
            via[s] = usize::MAX - 1;
            let mut i = 0;
            while i < queue.len() && via[t] == usize::MAX {
                let x = queue[i];
                i += 1;
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && via[y] == usize::MAX {
                        via[y] = a;
                        queue.push(y);
                    }
                }
            }
            if via[t] == usize::MAX {
                break;
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Number of internally disjoint `(s, t)`-paths for non-adjacent `s != t`,
/// counted up to `limit`.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let n = g.n();
    let big = n as u32 + 1;
    let mut f = Flow::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        f.arc(2 * v, 2 * v + 1, c);
        for &w in g.neighbors(v) {
            f.arc(2 * v + 1, 2 * w, big);
        }
    }
    f.max_flow(2 * s + 1, 2 * t, limit)
}

/// Vertex connectivity; `K_n` has connectivity `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut kappa = g.min_degree().min(n - 1);
    // A minimum separator misses one of the first kappa + 1 vertices, and
    // that vertex is separated from something.
    let mut i = 0;
    while i <= kappa && i < n {
        for w in 0..n {
            if w != i && !g.has_edge(i, w) {
                kappa = kappa.min(local_connectivity(g, i, w, kappa));
            }
        }
        i += 1;
    }
    kappa
}

pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n < k + 1 {
        return false;
    }
    if k == 0 {
        return true;
    }
    if g.min_degree() < k || !g.is_connected() {
        return false;
    }
    for i in 0..k {
        for w in 0..n {
            if w != i && !g.has_edge(i, w) && local_connectivity(g, i, w, k) < k {
                return false;
            }
        }
    }
    true
}

/// A 3-set `t` such that `G - t` falls apart with cycle vertices on both
/// sides. `side_a` is the component holding the smallest such cycle vertex;
/// `side_b` is the rest of `V(G) - t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub t: [Vertex; 3],
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
}

impl SeparationWitness {
    /// Checks the witness independently of how it was found.
    pub fn holds(&self, g: &Graph, c: &CycleOrPath) -> bool {
        let mut label = vec![0u8; g.n()];
        for &v in &self.t {
            label[v] = 3;
        }
        for &v in &self.side_a {
            label[v] = 1;
        }
        for &v in &self.side_b {
            label[v] = 2;
        }
        let partitioned =
            self.side_a.len() + self.side_b.len() + 3 == g.n() && label.iter().all(|&l| l != 0);
        let no_cross = g
            .edges()
            .all(|e| label[e.u] + label[e.v] != 3 || label[e.u] == 3 || label[e.v] == 3);
        let hits = |side: &[Vertex]| side.iter().any(|&v| c.contains_vertex(v));
        partitioned && no_cross && hits(&self.side_a) && hits(&self.side_b)
    }
}

/// The lexicographically smallest 3-set separating two vertices of `c`.
pub fn separable_cycle_witness(g: &Graph, c: &CycleOrPath) -> Option<SeparationWitness> {
    let n = g.n();
    let on: Vec<bool> = (0..n).map(|v| c.contains_vertex(v)).collect();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let comps = g.components_avoiding(&[a, b, d]);
                let mut hit = comps.iter().filter(|comp| comp.iter().any(|&v| on[v]));
                let (Some(first), Some(_)) = (hit.next(), hit.next()) else {
                    continue;
                };
                let side_a = first.clone();
                let side_b = (0..n)
                    .filter(|&v| v != a && v != b && v != d && side_a.binary_search(&v).is_err())
                    .collect();
                return Some(SeparationWitness {
                    t: [a, b, d],
                    side_a,
                    side_b,
                });
            }
        }
    }
    None
}
