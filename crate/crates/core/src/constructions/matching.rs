use std::collections::BTreeSet;

use thiserror::Error;

use crate::cycles::{longest_cycle_through, Budget, CycleOrPath, RequiredSet, SearchError};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("host is not cubic")]
    NotCubic,
    #[error("sides do not partition the vertices into two sets of size 2k")]
    BadSides,
    #[error("a side does not induce exactly its matching")]
    BadMatching,
    #[error("base cycle is invalid: {0}")]
    BadBase(&'static str),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("no cycle longer than {0} contains the matching")]
    Falsified(usize),
}

/// A cubic graph whose vertex set splits into `A` and `B`, each inducing a
/// perfect matching, with a `3k`-cycle through `M = E(G[A])` meeting each
/// edge of `M' = E(G[B])` once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingFrame {
    host: Graph,
    side_a: Vec<Vertex>,
    side_b: Vec<Vertex>,
    matching_m: Vec<Edge>,
    matching_m_prime: Vec<Edge>,
    base_cycle: CycleOrPath,
}

fn induced_edges(g: &Graph, side: &[Vertex]) -> Vec<Edge> {
    let set: BTreeSet<Vertex> = side.iter().copied().collect();
    g.edges().filter(|e| set.contains(&e.u) && set.contains(&e.v)).collect()
}

impl MatchingFrame {
    pub fn new(
        host: Graph,
        mut side_a: Vec<Vertex>,
        mut side_b: Vec<Vertex>,
        mut matching_m: Vec<Edge>,
        mut matching_m_prime: Vec<Edge>,
        base_cycle: CycleOrPath,
    ) -> Result<MatchingFrame, MatchingError> {
        if !host.is_regular(3) {
            return Err(MatchingError::NotCubic);
        }
        side_a.sort_unstable();
        side_b.sort_unstable();
        matching_m.sort_unstable();
        matching_m_prime.sort_unstable();
        let all: BTreeSet<Vertex> = side_a.iter().chain(&side_b).copied().collect();
        let k2 = side_a.len();
        if k2 == 0 || k2 % 2 != 0 || side_b.len() != k2 || all.len() != host.n() || all.len() != 2 * k2 {
            return Err(MatchingError::BadSides);
        }
        let k = k2 / 2;
        let perfect = |side: &[Vertex], m: &[Edge]| {
            let covered: BTreeSet<Vertex> = m.iter().flat_map(|e| [e.u, e.v]).collect();
            m.len() * 2 == side.len() && covered.len() == side.len()
        };
        if induced_edges(&host, &side_a) != matching_m
            || induced_edges(&host, &side_b) != matching_m_prime
            || !perfect(&side_a, &matching_m)
            || !perfect(&side_b, &matching_m_prime)
        {
            return Err(MatchingError::BadMatching);
        }
        if !base_cycle.is_cycle() || base_cycle.check_in(&host).is_err() {
            return Err(MatchingError::BadBase("not a cycle of the host"));
        }
        if base_cycle.len() != 3 * k {
            return Err(MatchingError::BadBase("length is not 3k"));
        }
        if !matching_m.iter().all(|&e| base_cycle.contains_edge(e)) {
            return Err(MatchingError::BadBase("misses an edge of M"));
        }
        let once = |e: &Edge| base_cycle.contains_vertex(e.u) != base_cycle.contains_vertex(e.v);
        if !matching_m_prime.iter().all(once) {
            return Err(MatchingError::BadBase("meets an edge of M' twice or not at all"));
        }
        Ok(MatchingFrame {
            host,
            side_a,
            side_b,
            matching_m,
            matching_m_prime,
            base_cycle,
        })
    }

    pub fn k(&self) -> usize {
        self.side_a.len() / 2
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn side_a(&self) -> &[Vertex] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[Vertex] {
        &self.side_b
    }

    pub fn matching_m(&self) -> &[Edge] {
        &self.matching_m
    }

    pub fn matching_m_prime(&self) -> &[Edge] {
        &self.matching_m_prime
    }

    pub fn base_cycle(&self) -> &CycleOrPath {
        &self.base_cycle
    }

    /// `K4` with `M = {01}`, `M' = {23}` and base triangle `0 1 2`.
    pub fn k4() -> MatchingFrame {
        MatchingFrame::new(
            Graph::complete(4),
            vec![0, 1],
            vec![2, 3],
            vec![Edge::new(0, 1)],
            vec![Edge::new(2, 3)],
            CycleOrPath::cycle(vec![0, 1, 2]),
        )
        .unwrap()
    }

    /// Every frame with parameter `k`, up to isomorphism.
    ///
    /// The base cycle is forced to read `r_1 s_1 t_1 r_2 s_2 t_2 ...` with
    /// `s_i t_i` in `M`; each `r_i` has an off-cycle partner `u_i`, and the
    /// remaining edges pair every `s`/`t` with one `u`, two per `u`. Frames
    /// differ only in that assignment, which is enumerated here.
    /// Vertex `3i` is `r_{i+1}`, `3i+1` and `3i+2` are `s_{i+1}, t_{i+1}`,
    /// and `3k + i` is `u_{i+1}`.
    pub fn family(k: usize) -> Vec<MatchingFrame> {
        let a: Vec<Vertex> = (0..k).flat_map(|i| [3 * i + 1, 3 * i + 2]).collect();
        let mut out = Vec::new();
        let mut owner = vec![usize::MAX; 3 * k];
        fn assign(
            k: usize,
            a: &[Vertex],
            idx: usize,
            owner: &mut Vec<usize>,
            load: &mut Vec<usize>,
            out: &mut Vec<MatchingFrame>,
        ) {
            if idx == a.len() {
                let mut g = Graph::new(4 * k);
                for i in 0..k {
                    let (r, s, t) = (3 * i, 3 * i + 1, 3 * i + 2);
                    g.add_edge(r, s);
                    g.add_edge(s, t);
                    g.add_edge(t, (3 * i + 3) % (3 * k));
                    g.add_edge(r, 3 * k + i);
                }
                for &v in a {
                    g.add_edge(v, 3 * k + owner[v]);
                }
                let frame = MatchingFrame::new(
                    g,
                    a.to_vec(),
                    (0..k).flat_map(|i| [3 * i, 3 * k + i]).collect(),
                    (0..k).map(|i| Edge::new(3 * i + 1, 3 * i + 2)).collect(),
                    (0..k).map(|i| Edge::new(3 * i, 3 * k + i)).collect(),
                    CycleOrPath::cycle((0..3 * k).collect()),
                );
                if let Ok(f) = frame {
                    out.push(f);
                }
                return;
            }
            for u in 0..k {
                if load[u] < 2 {
                    load[u] += 1;
                    owner[a[idx]] = u;
                    assign(k, a, idx + 1, owner, load, out);
                    load[u] -= 1;
                }
            }
        }
        if k == 0 {
            return out;
        }
        assign(k, &a, 0, &mut owner, &mut vec![0; k], &mut out);
        out
    }
}

/// A cycle through every edge of `M` longer than `3k`: the longest such
/// cycle, so failure means none exists.
pub fn matching_extension_search(frame: &MatchingFrame, budget: &mut Budget) -> Result<CycleOrPath, MatchingError> {
    let r = RequiredSet::new(frame.matching_m.iter().copied(), []).expect("a matching is a linear forest");
    let bound = 3 * frame.k();
    match longest_cycle_through(&frame.host, &r, budget)? {
        Some(c) if c.len() > bound => Ok(c),
        _ => Err(MatchingError::Falsified(bound)),
    }
}
