//! Fixed inputs for the benchmarks.

use longchord::corpus::random_regular;
use longchord::Graph;

/// Seeded random cubic graphs on `n` vertices.
pub fn cubic(n: usize, count: usize) -> Vec<Graph> {
    (0..count as u64).filter_map(|s| random_regular(n, 3, s)).collect()
}

/// The `k`-prism: two `k`-cycles joined by a perfect matching. Planar and
/// 3-connected.
pub fn prism(k: usize) -> Graph {
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k);
        g.add_edge(k + i, k + (i + 1) % k);
        g.add_edge(i, k + i);
    }
    g
}
