//! Slow reference implementations, written independently of the library
//! algorithms they check.

use std::collections::{BTreeMap, BTreeSet};

use longchord::lollipop::{check_even_independence, lollipop_neighbors, lollipop_successors, path_degree_formula, AnchoredPath};
use longchord::{Edge, Graph};

/// Contains a K5 or K3,3 minor. Exponential; meant for n <= 7.
pub fn has_kuratowski_minor(g: &Graph) -> bool {
    let n = g.n();
    if n < 5 {
        return false;
    }
    if n == 5 && g.m() == 10 {
        return true;
    }
    if n == 6 && spans_k33(g) {
        return true;
    }
    if n == 5 {
        return false;
    }
    (0..n).any(|v| has_kuratowski_minor(&g.delete_vertex(v).unwrap().0))
        || g.edges().any(|e| has_kuratowski_minor(&g.contract_edge(e).unwrap().0))
}

fn spans_k33(g: &Graph) -> bool {
    for a in 1..6 {
        for b in a + 1..6 {
            let left = [0, a, b];
            let right: Vec<usize> = (0..6).filter(|v| !left.contains(v)).collect();
            if left.iter().all(|&x| right.iter().all(|&y| g.has_edge(x, y))) {
                return true;
            }
        }
    }
    false
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

/// Every cycle once, as a vertex list starting at its smallest vertex with
/// the second vertex smaller than the last. Found by trying every ordering
/// of every vertex subset.
pub fn all_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 12);
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() < 3 {
            continue;
        }
        let vs = members(mask, n);
        let mut rest = vs[1..].to_vec();
        loop {
            if rest[0] < rest[rest.len() - 1] {
                let mut c = vec![vs[0]];
                c.extend(&rest);
                if (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()])) {
                    out.push(c);
                }
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
    }
    out
}

/// Every `x`-`y` path, by ordering every subset of the other vertices.
pub fn all_paths(g: &Graph, x: usize, y: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << others.len() {
        let mut mid: Vec<usize> = members(mask, others.len()).into_iter().map(|i| others[i]).collect();
        loop {
            let mut p = vec![x];
            p.extend(&mid);
            p.push(y);
            if p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                out.push(p);
            }
            if !next_permutation(&mut mid) {
                break;
            }
        }
    }
    out
}

pub fn cycle_edges(c: &[usize]) -> Vec<(usize, usize)> {
    (0..c.len())
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

pub fn chord_count(g: &Graph, c: &[usize]) -> usize {
    let on: Vec<bool> = (0..g.n()).map(|v| c.contains(&v)).collect();
    let walk = cycle_edges(c);
    g.edges()
        .filter(|e| on[e.u] && on[e.v] && !walk.contains(&(e.u, e.v)))
        .count()
}

/// Vertex connectivity by trying every vertex subset, smallest first.
pub fn connectivity_by_subsets(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    for k in 0..n {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize == k {
                let removed = members(mask, n);
                if g.components_avoiding(&removed).len() > 1 {
                    return k;
                }
            }
        }
    }
    n - 1
}

pub type Path = Vec<usize>;

/// Every path starting `a b` that holds all odd vertices and ends at one.
pub fn anchored_paths(g: &Graph, a: usize, b: usize) -> Vec<Path> {
    let odd: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).collect();
    let mut out = Vec::new();
    fn go(g: &Graph, cur: &mut Path, odd: &[usize], out: &mut Vec<Path>) {
        let end = *cur.last().unwrap();
        if g.degree(end) % 2 == 1 && odd.iter().all(|v| cur.contains(v)) {
            out.push(cur.clone());
        }
        for &w in g.neighbors(end) {
            if !cur.contains(&w) {
                cur.push(w);
                go(g, cur, odd, out);
                cur.pop();
            }
        }
    }
    go(g, &mut vec![a, b], &odd, &mut out);
    out
}

/// `q` arises from `p` by one move, read off from `q`: it keeps `x_1..x_s`,
/// optionally passes one vertex off `p`, then runs `p`'s tail backwards,
/// starting at `x_n` and stopping at `x_{s+1}` when that is odd, `x_{s+2}`
/// otherwise.
pub fn is_move(g: &Graph, p: &Path, q: &Path) -> bool {
    let n = p.len();
    (2..=n.saturating_sub(2)).any(|s| {
        if q.len() < s || q[..s] != p[..s] {
            return false;
        }
        let stop = if g.degree(p[s]) % 2 == 1 { s } else { s + 1 };
        let tail: Path = p[stop..].iter().rev().copied().collect();
        let rest = &q[s..];
        let xs = p[s - 1];
        let xn = p[n - 1];
        (rest == tail.as_slice() && g.has_edge(xs, xn))
            || (rest.len() == tail.len() + 1
                && rest[1..] == tail[..]
                && !p.contains(&rest[0])
                && g.has_edge(xs, rest[0])
                && g.has_edge(rest[0], xn))
    })
}

pub struct ExplicitH {
    pub paths: Vec<Path>,
    pub succ: Vec<BTreeSet<usize>>,
    pub undirected: Vec<BTreeSet<usize>>,
}

pub fn explicit_h(g: &Graph, a: usize, b: usize) -> ExplicitH {
    let paths = anchored_paths(g, a, b);
    let mut succ = vec![BTreeSet::new(); paths.len()];
    let mut undirected = vec![BTreeSet::new(); paths.len()];
    for i in 0..paths.len() {
        for j in 0..paths.len() {
            if i != j && paths[i].len().abs_diff(paths[j].len()) <= 1 && is_move(g, &paths[i], &paths[j]) {
                succ[i].insert(j);
                undirected[i].insert(j);
                undirected[j].insert(i);
            }
        }
    }
    ExplicitH {
        paths,
        succ,
        undirected,
    }
}

fn even_independent(g: &Graph, anchor: Edge) -> bool {
    check_even_independence(g, anchor).is_ok()
}

pub struct Tally {
    pub instances: usize,
    pub asymmetric: usize,
    pub formula_exact: usize,
    pub paths: usize,
}

/// Compares the library's moves with the explicit `H` on every graph in the
/// corpus up to `n_max` and every anchor orientation meeting the hypotheses.
pub fn compare_lollipop(n_max: usize) -> Tally {
    let mut t = Tally {
        instances: 0,
        asymmetric: 0,
        formula_exact: 0,
        paths: 0,
    };
    for g in super::corpus("all_1-8.g6.gz").into_iter().filter(|g| g.n() <= n_max && g.is_connected()) {
        for e in g.edges() {
            if !even_independent(&g, e) {
                continue;
            }
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let h = explicit_h(&g, a, b);
                if h.paths.is_empty() {
                    continue;
                }
                t.instances += 1;
                let index: BTreeMap<&Path, usize> = h.paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
                let mut odd = 0;
                for (i, p) in h.paths.iter().enumerate() {
                    let ap = AnchoredPath::new(&g, p.clone()).unwrap();
                    let ours: BTreeSet<usize> = lollipop_successors(&g, &ap)
                        .unwrap()
                        .iter()
                        .map(|q| index[&q.vertices().to_vec()])
                        .collect();
                    assert_eq!(ours, h.succ[i], "successors of {p:?} in {g:?}");
                    let nb: BTreeSet<usize> = lollipop_neighbors(&g, &ap)
                        .unwrap()
                        .iter()
                        .map(|q| index[&q.vertices().to_vec()])
                        .collect();
                    assert_eq!(nb, h.undirected[i], "neighbours of {p:?} in {g:?}");
                    if h.succ[i].iter().any(|&j| !h.succ[j].contains(&i)) {
                        t.asymmetric += 1;
                    }
                    let deg = h.undirected[i].len() as i64;
                    let f = path_degree_formula(&g, &ap);
                    // A bare anchor is not closed by its own edge.
                    if p.len() >= 3 {
                        assert_eq!(f.rem_euclid(2), deg % 2, "formula parity at {p:?} in {g:?}");
                    }
                    if f == deg {
                        t.formula_exact += 1;
                    }
                    odd += deg as usize % 2;
                }
                assert_eq!(odd % 2, 0, "handshake in {g:?} from {a}{b}");
                t.paths += h.paths.len();
            }
        }
    }
    t
}
