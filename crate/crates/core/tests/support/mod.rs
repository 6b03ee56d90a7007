#![allow(dead_code)]

pub mod oracles;

use std::path::PathBuf;

use longchord::corpus::read_graphs;
use longchord::constructions::MatchingFrame;
use longchord::{CycleOrPath, Edge, Graph};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpora").join(name)
}

pub fn corpus(name: &str) -> Vec<Graph> {
    read_graphs(corpus_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every simple path with at least three vertices whose internal vertices
/// each keep a neighbour off the path, in both orientations.
pub fn premise_paths(g: &Graph) -> Vec<Vec<usize>> {
    fn go(g: &Graph, cur: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 3 && cur[1..cur.len() - 1].iter().all(|&v| g.neighbors(v).iter().any(|&w| !on[w])) {
            out.push(cur.clone());
        }
        let last = *cur.last().unwrap();
        for &w in g.neighbors(last) {
            if !on[w] {
                on[w] = true;
                cur.push(w);
                go(g, cur, on, out);
                cur.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut on = vec![false; g.n()];
        on[s] = true;
        go(g, &mut vec![s], &mut on, &mut out);
    }
    out
}

/// A graph with a cycle and anchor meeting the second-cycle hypotheses:
/// every vertex off the cycle has even degree, even vertices touch only
/// odd ones (the anchor excepted) and a cycle neighbour of the anchor is
/// odd. Cycle `0 1 ... k-1`, anchor `0 1`.
pub fn second_cycle_instance(n_max: usize, seed: u64) -> (Graph, Vec<usize>, (usize, usize)) {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(5..=n_max);
        let k = rng.gen_range(4..=n);
        let mut g = Graph::new(n);
        for i in 0..k {
            g.add_edge(i, (i + 1) % k);
        }
        for w in k..n {
            let mut on: Vec<usize> = (0..k).collect();
            on.shuffle(&mut rng);
            let d = if k >= 4 && rng.gen_bool(0.3) { 4 } else { 2 };
            for &v in &on[..d] {
                g.add_edge(w, v);
            }
        }
        for _ in 0..rng.gen_range(0..=k) {
            let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
            if a != b {
                g.add_edge(a, b);
            }
        }
        // Pair up even cycle vertices with chords until none are left or no
        // pair is available.
        loop {
            let even: Vec<usize> = (0..k).filter(|&v| g.degree(v) % 2 == 0).collect();
            let pair = even
                .iter()
                .flat_map(|&a| even.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| a < b && !g.has_edge(a, b));
            match pair {
                Some((a, b)) => {
                    g.add_edge(a, b);
                }
                None => break,
            }
        }
        let ok_pairs = g
            .edges()
            .all(|e| (e.u, e.v) == (0, 1) || g.degree(e.u) % 2 == 1 || g.degree(e.v) % 2 == 1);
        let off_even = (k..n).all(|w| g.degree(w) % 2 == 0);
        let odd_next = g.degree(2) % 2 == 1 || g.degree(k - 1) % 2 == 1;
        if ok_pairs && off_even && odd_next {
            return (g, (0..k).collect(), (0, 1));
        }
    }
}

/// A hand-built frame with `k = 2` whose best extension is Hamiltonian.
pub fn frame_k2() -> MatchingFrame {
    let g = Graph::from_edges(
        8,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (3, 7), (1, 6), (4, 6), (2, 7), (5, 7)],
    )
    .unwrap();
    MatchingFrame::new(
        g,
        vec![1, 2, 4, 5],
        vec![0, 3, 6, 7],
        vec![Edge::new(1, 2), Edge::new(4, 5)],
        vec![Edge::new(0, 6), Edge::new(3, 7)],
        CycleOrPath::cycle((0..6).collect()),
    )
    .unwrap()
}
