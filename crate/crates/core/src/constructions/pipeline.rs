use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::coloring::{
    k_coloring, select_red_class, triangle_3coloring, ColoringError, TriangleSystem,
    TriangleSystemError,
};
use super::matching::{matching_extension_search, MatchingError, MatchingFrame};
use crate::connectivity::is_k_connected;
use crate::cycles::{Budget, CycleOrPath, WalkError};
use crate::graph::{Edge, Graph, GraphError, Image, Vertex, VertexMap};
use crate::lollipop::{find_second_cycle, LollipopError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("not a path of the graph: {0}")]
    BadPath(WalkError),
    #[error("{0} is not an endpoint of the path")]
    NotEndpoint(Vertex),
    #[error("component containing {0} has fewer than two attachments")]
    FewAttachments(Vertex),
    #[error("replacing a component by {0} would duplicate an edge")]
    ParallelReplacement(Edge),
    #[error("bad picks for {0}")]
    BadPicks(Vertex),
    #[error("outside the construction: {0}")]
    Shape(String),
    #[error(transparent)]
    Triangles(#[from] TriangleSystemError),
    #[error("augmentation creates parallel edges")]
    Parallel(RawDecomposition),
    #[error("{0} is not an edge")]
    MissingEdge(Edge),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cycle is not pleasant: {0}")]
    NotPleasant(String),
}

/// A component of `G - V(P)` and what it became.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedComponent {
    /// Vertices in `G`.
    pub vertices: Vec<Vertex>,
    /// Attachments in `G`.
    pub attachments: Vec<Vertex>,
    /// A vertex or an edge of `G1`.
    pub image: Image,
    pub pleasant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeClassification {
    pub pleasant_vertices: Vec<Vertex>,
    pub unpleasant_vertices: Vec<Vertex>,
    pub pleasant_edges: Vec<Edge>,
    pub unpleasant_edges: Vec<Edge>,
    /// `G` to `G1`.
    pub provenance: VertexMap,
    pub components: Vec<ReducedComponent>,
}

impl BridgeClassification {
    fn component(&self, image: Image) -> Option<&ReducedComponent> {
        self.components.iter().find(|c| c.image == image)
    }

    /// The path in `G1` coordinates.
    pub fn map_path(&self, p: &CycleOrPath) -> CycleOrPath {
        let vs = p
            .vertices()
            .iter()
            .map(|&v| self.provenance.vertex(v).expect("path vertices survive"))
            .collect();
        CycleOrPath::path(vs)
    }
}

/// Contracts each component of `G - V(P)` with three or more attachments to
/// a vertex and replaces each with two attachments by an edge. `G1` keeps
/// the vertices of `P` and one vertex per contracted component, numbered in
/// the order of their smallest original vertex.
pub fn reduce_bridges(
    g: &Graph,
    p: &CycleOrPath,
    x: Vertex,
) -> Result<(Graph, BridgeClassification), ConstructionError> {
    p.check_in(g).map_err(ConstructionError::BadPath)?;
    if p.is_cycle() {
        return Err(ConstructionError::Shape("expected a path".into()));
    }
    if x != p.first() && x != p.last() {
        return Err(ConstructionError::NotEndpoint(x));
    }
    let n = g.n();
    let mut on = vec![false; n];
    for &v in p.vertices() {
        on[v] = true;
    }
    let mut pieces = Vec::new();
    let mut reps: Vec<Vertex> = p.vertices().to_vec();
    for comp in g.components_avoiding(p.vertices()) {
        let att: BTreeSet<Vertex> = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied().filter(|&w| on[w]))
            .collect();
        if att.len() < 2 {
            return Err(ConstructionError::FewAttachments(comp[0]));
        }
        if att.len() >= 3 {
            reps.push(comp[0]);
        }
        pieces.push((comp, att.into_iter().collect::<Vec<_>>()));
    }
    reps.sort_unstable();
    let mut id = vec![usize::MAX; n];
    for (i, &v) in reps.iter().enumerate() {
        id[v] = i;
    }
    let mut g1 = Graph::new(reps.len());
    for e in g.edges() {
        if on[e.u] && on[e.v] {
            g1.add_edge(id[e.u], id[e.v]);
        }
    }
    let mut images = vec![Image::Gone; n];
    for &v in p.vertices() {
        images[v] = Image::Vertex(id[v]);
    }
    let mut class = BridgeClassification {
        pleasant_vertices: Vec::new(),
        unpleasant_vertices: Vec::new(),
        pleasant_edges: Vec::new(),
        unpleasant_edges: Vec::new(),
        provenance: VertexMap::identity(0),
        components: Vec::new(),
    };
    for (comp, att) in pieces {
        let pleasant = !att.contains(&x);
        let image = if att.len() >= 3 {
            let c = id[comp[0]];
            for &a in &att {
                g1.add_edge(c, id[a]);
            }
            if pleasant {
                class.pleasant_vertices.push(c);
            } else {
                class.unpleasant_vertices.push(c);
            }
            Image::Vertex(c)
        } else {
            let e = Edge::new(id[att[0]], id[att[1]]);
            if !g1.add_edge(e.u, e.v) {
                return Err(ConstructionError::ParallelReplacement(e));
            }
            if pleasant {
                class.pleasant_edges.push(e);
            } else {
                class.unpleasant_edges.push(e);
            }
            Image::Edge(e)
        };
        for &v in &comp {
            images[v] = image;
        }
        class.components.push(ReducedComponent {
            vertices: comp,
            attachments: att,
            image,
            pleasant,
        });
    }
    class.pleasant_vertices.sort_unstable();
    class.unpleasant_vertices.sort_unstable();
    class.pleasant_edges.sort_unstable();
    class.unpleasant_edges.sort_unstable();
    class.provenance = VertexMap::from_images(images, reps.len());
    Ok((g1, class))
}

/// The cycle and triangles of an augmentation that is not a simple graph,
/// in `G1` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDecomposition {
    pub cycle: Vec<Vertex>,
    pub triangles: Vec<[Vertex; 3]>,
}

impl RawDecomposition {
    /// A proper 3-coloring of the underlying simple graph, keyed by `G1`
    /// vertex.
    pub fn coloring(&self) -> Option<BTreeMap<Vertex, usize>> {
        let mut vs = self.cycle.clone();
        vs.sort_unstable();
        let rank = |v: Vertex| vs.binary_search(&v).unwrap();
        let mut h = Graph::new(vs.len());
        for i in 0..self.cycle.len() {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % self.cycle.len()]);
            if a != b {
                h.add_edge(rank(a), rank(b));
            }
        }
        for t in &self.triangles {
            h.add_edge(rank(t[0]), rank(t[1]));
            h.add_edge(rank(t[0]), rank(t[2]));
            h.add_edge(rank(t[1]), rank(t[2]));
        }
        let c = k_coloring(&h, 3)?;
        Some(vs.iter().enumerate().map(|(i, &v)| (v, c[i])).collect())
    }
}

/// Default picks: for each pleasant vertex, its first three neighbours along
/// `uPy`.
pub fn default_picks(g1: &Graph, p1: &CycleOrPath, class: &BridgeClassification) -> Result<Vec<[Vertex; 3]>, ConstructionError> {
    class
        .pleasant_vertices
        .iter()
        .map(|&ui| {
            let ns: Vec<Vertex> = p1.vertices()[1..]
                .iter()
                .copied()
                .filter(|&v| g1.has_edge(ui, v))
                .take(3)
                .collect();
            <[Vertex; 3]>::try_from(ns).map_err(|_| ConstructionError::BadPicks(ui))
        })
        .collect()
}

/// Adds a triangle on the picks of each pleasant vertex, deletes
/// `I ∪ J ∪ D ∪ F` and `x`, closes `uPy` with `uy` and suppresses the
/// cycle's degree-2 vertices. `p1` runs from `x` to `y` in `G1`.
/// The map sends `G1` to the triangle system.
pub fn triangle_augment(
    g1: &Graph,
    p1: &CycleOrPath,
    class: &BridgeClassification,
    picks: &[[Vertex; 3]],
) -> Result<(TriangleSystem, VertexMap), ConstructionError> {
    let pv = p1.vertices();
    if pv.len() < 3 {
        return Err(ConstructionError::Shape("path too short".into()));
    }
    if picks.len() != class.pleasant_vertices.len() {
        return Err(ConstructionError::Shape("one pick triple per pleasant vertex".into()));
    }
    let sub = &pv[1..];
    let pos: BTreeMap<Vertex, usize> = sub.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut chosen = BTreeSet::new();
    for (&ui, t) in class.pleasant_vertices.iter().zip(picks) {
        let distinct = t[0] != t[1] && t[0] != t[2] && t[1] != t[2];
        if !distinct || t.iter().any(|&v| !pos.contains_key(&v) || !g1.has_edge(ui, v) || !chosen.insert(v)) {
            return Err(ConstructionError::BadPicks(ui));
        }
    }
    // Anything else joining two vertices of uPy would survive the deletions.
    let removed: BTreeSet<Edge> = class
        .pleasant_edges
        .iter()
        .chain(&class.unpleasant_edges)
        .copied()
        .collect();
    for e in g1.edges() {
        if let (Some(&a), Some(&b)) = (pos.get(&e.u), pos.get(&e.v)) {
            if a.abs_diff(b) != 1 && !removed.contains(&e) {
                return Err(ConstructionError::Shape(format!("chord {e} of uPy")));
            }
        }
    }
    let cycle: Vec<Vertex> = sub.iter().copied().filter(|v| chosen.contains(v)).collect();
    let mut sorted_picks: Vec<[Vertex; 3]> = picks
        .iter()
        .map(|t| {
            let mut t = *t;
            t.sort_unstable();
            t
        })
        .collect();
    sorted_picks.sort_unstable();
    let raw = RawDecomposition {
        cycle: cycle.clone(),
        triangles: sorted_picks.clone(),
    };
    let mut edges = BTreeSet::new();
    let mut simple = cycle.len() >= 3;
    for i in 0..cycle.len() {
        simple &= edges.insert(Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    for t in &sorted_picks {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            simple &= edges.insert(Edge::new(a, b));
        }
    }
    if !simple {
        return Err(ConstructionError::Parallel(raw));
    }
    let ranks: Vec<Vertex> = chosen.iter().copied().collect();
    let rank = |v: Vertex| ranks.binary_search(&v).unwrap();
    let mut host = Graph::new(ranks.len());
    for e in &edges {
        host.add_edge(rank(e.u), rank(e.v));
    }
    let mut images = vec![Image::Gone; g1.n()];
    for (i, &v) in sub.iter().enumerate() {
        images[v] = if chosen.contains(&v) {
            Image::Vertex(rank(v))
        } else {
            let before = (0..=i).rev().map(|j| sub[j]).find(|w| chosen.contains(w));
            let after = sub[i..].iter().copied().find(|w| chosen.contains(w));
            let (a, b) = match (before, after) {
                (Some(a), Some(b)) => (a, b),
                (None, Some(b)) => (*cycle.last().unwrap(), b),
                (Some(a), None) => (a, cycle[0]),
                (None, None) => unreachable!("at least three picks"),
            };
            Image::Edge(Edge::new(rank(a), rank(b)))
        };
    }
    let ts = TriangleSystem::new(
        host,
        CycleOrPath::cycle(cycle.iter().map(|&v| rank(v)).collect()),
        sorted_picks
            .iter()
            .map(|t| [rank(t[0]), rank(t[1]), rank(t[2])])
            .collect(),
    )?;
    Ok((ts, VertexMap::from_images(images, ranks.len())))
}

/// Deletes `delete_first`, then contracts each pair in `pairing` and each
/// pair in `x_merges`, in order. Pairs are given in `g1` coordinates.
pub fn contract_pairing(
    g1: &Graph,
    pairing: &[(Vertex, Vertex)],
    x_merges: &[(Vertex, Vertex)],
    delete_first: &[Edge],
) -> Result<(Graph, VertexMap), ConstructionError> {
    let mut g = g1.clone();
    for &e in delete_first {
        if !g.remove_edge(e.u, e.v) {
            return Err(ConstructionError::MissingEdge(e));
        }
    }
    let mut map = VertexMap::identity(g1.n());
    for &(a, b) in pairing.iter().chain(x_merges) {
        let missing = ConstructionError::MissingEdge(Edge::new(a, b));
        let (Some(ia), Some(ib)) = (map.vertex(a), map.vertex(b)) else {
            return Err(missing);
        };
        if ia == ib || !g.has_edge(ia, ib) {
            return Err(missing);
        }
        let (h, m) = g.contract_edge(Edge::new(ia, ib))?;
        g = h;
        map = map.then(&m);
    }
    Ok((g, map))
}

/// Who takes over for a bypassed vertex of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dominator {
    Vertex(Vertex),
    Edge(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub r1: Vec<Vertex>,
    pub i1: Vec<Vertex>,
    pub j1: Vec<Vertex>,
    pub d1: Vec<Edge>,
    pub f1: Vec<Edge>,
    pub len_c: usize,
    pub len_c1: usize,
    /// `|E(C)| - 2|R1| + 2(|I1| + |J1|) + (|D1| + |F1|)`.
    pub tally_single: i64,
    /// The same with coefficient 3 on `|D1| + |F1|`.
    pub tally_triple: i64,
    pub dominators: Vec<(Vertex, Vec<Dominator>)>,
    pub equal_length: bool,
    pub i1_matches_r1: bool,
    pub no_j_d_f: bool,
    pub domination_counts: bool,
    pub biconditional: bool,
}

impl AuditRecord {
    pub fn claim_holds(&self) -> bool {
        self.equal_length && self.i1_matches_r1 && self.no_j_d_f && self.domination_counts && self.biconditional
    }
}

/// Compares `c1` with `c` as the pleasant-cycle claim describes. `c1` must
/// contain `anchor` and every vertex of `c` outside `r`.
pub fn pleasant_cycle_audit(
    g1: &Graph,
    c: &CycleOrPath,
    c1: &CycleOrPath,
    r: &[Vertex],
    class: &BridgeClassification,
    anchor: Edge,
) -> Result<AuditRecord, ConstructionError> {
    c.check_in(g1).map_err(ConstructionError::BadPath)?;
    c1.check_in(g1).map_err(ConstructionError::BadPath)?;
    if !c.is_cycle() || !c1.is_cycle() {
        return Err(ConstructionError::Shape("expected cycles".into()));
    }
    if !c1.contains_edge(anchor) {
        return Err(ConstructionError::NotPleasant(format!("misses {anchor}")));
    }
    let rset: BTreeSet<Vertex> = r.iter().copied().collect();
    let mut r1: Vec<Vertex> = c.vertices().iter().copied().filter(|&v| !c1.contains_vertex(v)).collect();
    r1.sort_unstable();
    if let Some(v) = r1.iter().find(|v| !rset.contains(v)) {
        return Err(ConstructionError::NotPleasant(format!("drops {v}, which is not red")));
    }
    let pick = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().copied().filter(|&v| c1.contains_vertex(v)).collect() };
    let pick_e = |es: &[Edge]| -> Vec<Edge> { es.iter().copied().filter(|&e| c1.contains_edge(e)).collect() };
    let i1 = pick(&class.pleasant_vertices);
    let j1 = pick(&class.unpleasant_vertices);
    let d1 = pick_e(&class.pleasant_edges);
    let f1 = pick_e(&class.unpleasant_edges);
    let ij: BTreeSet<Vertex> = i1.iter().chain(&j1).copied().collect();
    let df: BTreeSet<Edge> = d1.iter().chain(&f1).copied().collect();

    let around = |cyc: &CycleOrPath, v: Vertex| -> [Vertex; 2] {
        let k = cyc.order();
        let i = cyc.position(v).unwrap();
        let vs = cyc.vertices();
        [vs[(i + k - 1) % k], vs[(i + 1) % k]]
    };
    let mut dominators = Vec::new();
    let mut dominated: BTreeMap<Dominator, BTreeSet<Vertex>> = BTreeMap::new();
    for &a in &r1 {
        let mut ds = BTreeSet::new();
        for b in around(c, a) {
            if !c1.contains_vertex(b) {
                continue;
            }
            for w in around(c1, b) {
                if ij.contains(&w) {
                    ds.insert(Dominator::Vertex(w));
                }
                if df.contains(&Edge::new(b, w)) {
                    ds.insert(Dominator::Edge(Edge::new(b, w)));
                }
            }
        }
        for &d in &ds {
            dominated.entry(d).or_default().insert(a);
        }
        dominators.push((a, ds.into_iter().collect::<Vec<_>>()));
    }
    let i1_set: BTreeSet<Vertex> = i1.iter().copied().collect();
    let domination_counts = dominators
        .iter()
        .all(|(_, ds)| (1..=2).contains(&ds.len()) && ds.iter().all(|d| matches!(d, Dominator::Vertex(v) if i1_set.contains(v))))
        && i1
            .iter()
            .all(|&v| dominated.get(&Dominator::Vertex(v)).is_some_and(|s| (1..=2).contains(&s.len())));
    let once = |a: Vertex, d: Dominator| {
        let by = dominators.iter().find(|(x, _)| *x == a).map(|(_, ds)| ds.as_slice());
        by == Some(&[d][..])
    };
    let biconditional = dominators.iter().all(|(a, ds)| match ds.as_slice() {
        [d] => dominated.get(d).is_some_and(|s| s.len() == 1 && s.contains(a)),
        _ => true,
    }) && dominated.iter().all(|(d, s)| s.len() != 1 || once(*s.iter().next().unwrap(), *d));

    let (len_c, len_c1) = (c.len(), c1.len());
    let base = len_c as i64 - 2 * r1.len() as i64 + 2 * (i1.len() + j1.len()) as i64;
    let extra = (d1.len() + f1.len()) as i64;
    Ok(AuditRecord {
        equal_length: len_c == len_c1,
        i1_matches_r1: i1.len() == r1.len(),
        no_j_d_f: j1.is_empty() && d1.is_empty() && f1.is_empty(),
        domination_counts,
        biconditional,
        tally_single: base + extra,
        tally_triple: base + 3 * extra,
        r1,
        i1,
        j1,
        d1,
        f1,
        len_c,
        len_c1,
        dominators,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Detour,
    Reduce,
    Augment,
    Coloring,
    Contract,
    Lemma,
    PleasantLift,
    Audit,
    Frame,
    Matching,
    FinalLift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReplayOutcome {
    /// The premise does not hold, so there is nothing to refute.
    NotApplicable(String),
    /// A longer `(x, y)`-path through `z` in `G`.
    Longer { path: CycleOrPath, stage: Stage },
    /// The construction left its regime (possible when `P` is not longest).
    Stuck { stage: Stage, reason: String },
    /// A step whose success a cited theorem guarantees failed.
    Falsified { stage: Stage, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub outcome: ReplayOutcome,
    pub audit: Option<AuditRecord>,
    pub notes: Vec<String>,
}

/// Interior of a path from `from` to `to` through `comp`.
fn through_component(g: &Graph, comp: &[Vertex], from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let inside: BTreeSet<Vertex> = comp.iter().copied().collect();
    let mut prev: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &w in g.neighbors(from) {
        if inside.contains(&w) {
            prev.insert(w, None);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if g.has_edge(v, to) {
            let mut out = vec![v];
            let mut cur = v;
            while let Some(Some(p)) = prev.get(&cur) {
                out.push(*p);
                cur = *p;
            }
            out.reverse();
            return Some(out);
        }
        for &w in g.neighbors(v) {
            if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, Some(v));
                queue.push_back(w);
            }
        }
    }
    None
}

/// A `G1` cycle as a closed vertex sequence in `G`, expanding contracted
/// components. Consecutive vertices are `G` edges except possibly `virt`.
fn lift_to_g(g: &Graph, class: &BridgeClassification, cyc: &[Vertex], virt: Edge) -> Option<Vec<Vertex>> {
    let mut g_of: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for v in 0..g.n() {
        if let Image::Vertex(w) = class.provenance.image(v) {
            if class.component(Image::Vertex(w)).is_none() {
                g_of.insert(w, v);
            }
        }
    }
    let k = cyc.len();
    let mut out = Vec::new();
    for i in 0..k {
        let v = cyc[i];
        let next = cyc[(i + 1) % k];
        if let Some(comp) = class.component(Image::Vertex(v)) {
            let prev = cyc[(i + k - 1) % k];
            out.extend(through_component(g, &comp.vertices, *g_of.get(&prev)?, *g_of.get(&next)?)?);
            continue;
        }
        let a = *g_of.get(&v)?;
        out.push(a);
        if class.component(Image::Vertex(next)).is_some() {
            continue;
        }
        let b = *g_of.get(&next)?;
        if let Some(comp) = class.component(Image::Edge(Edge::new(v, next))) {
            out.extend(through_component(g, &comp.vertices, a, b)?);
        } else if !g.has_edge(a, b) && Edge::new(a, b) != virt {
            return None;
        }
    }
    Some(out)
}

/// Opens a closed sequence containing `x` next to `y` into an `(x, y)`-path.
fn open_at(seq: &[Vertex], x: Vertex, y: Vertex) -> Option<CycleOrPath> {
    let k = seq.len();
    let i = seq.iter().position(|&v| v == x)?;
    let mut out: Vec<Vertex> = if seq[(i + 1) % k] == y {
        (0..k).map(|j| seq[(i + k - j) % k]).collect()
    } else if seq[(i + k - 1) % k] == y {
        (0..k).map(|j| seq[(i + j) % k]).collect()
    } else {
        return None;
    };
    out.truncate(k);
    Some(CycleOrPath::path(out))
}

/// Every simple path inside `g[block]`, shortest first.
fn block_paths(g: &Graph, block: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    fn grow(g: &Graph, block: &[Vertex], cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        out.push(cur.clone());
        for &w in block {
            if !cur.contains(&w) && g.has_edge(*cur.last().unwrap(), w) {
                cur.push(w);
                grow(g, block, cur, out);
                cur.pop();
            }
        }
    }
    for &v in block {
        grow(g, block, &mut vec![v], &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// A cycle of `g1` that runs through the preimages of `c2`'s vertices in
/// order and uses `anchor`.
fn lift_contracted_cycle(g1: &Graph, map: &VertexMap, c2: &CycleOrPath, anchor: Edge) -> Option<CycleOrPath> {
    let options: Vec<Vec<Vec<Vertex>>> = c2
        .vertices()
        .iter()
        .map(|&w| block_paths(g1, &map.preimage(w)))
        .collect();
    fn go(g1: &Graph, options: &[Vec<Vec<Vertex>>], i: usize, acc: &mut Vec<Vertex>, anchor: Edge) -> bool {
        if i == options.len() {
            let c = CycleOrPath::cycle(acc.clone());
            return acc.len() >= 3 && g1.has_edge(*acc.last().unwrap(), acc[0]) && c.contains_edge(anchor);
        }
        for opt in &options[i] {
            if i > 0 && !g1.has_edge(*acc.last().unwrap(), opt[0]) {
                continue;
            }
            let len = acc.len();
            acc.extend(opt);
            if go(g1, options, i + 1, acc, anchor) {
                return true;
            }
            acc.truncate(len);
        }
        false
    }
    let mut acc = Vec::new();
    go(g1, &options, 0, &mut acc, anchor).then(|| CycleOrPath::cycle(acc))
}

struct Frame {
    frame: MatchingFrame,
    /// `G3` vertex to `G1` vertex.
    back: Vec<Vertex>,
    /// The `S_i` blocks in `G1`, oriented from `s_{i1}` to `s_{ij_i}`.
    blocks: Vec<Vec<Vertex>>,
}

fn build_frame(g1: &Graph, c: &CycleOrPath, c1: &CycleOrPath, audit: &AuditRecord, phi: &BTreeMap<Vertex, Vertex>) -> Result<Frame, String> {
    let k = audit.r1.len();
    if k == 0 {
        return Err("no bypassed red vertex".into());
    }
    let order = c.order();
    let cv = c.vertices();
    let red: BTreeSet<Vertex> = audit.r1.iter().copied().collect();
    let start = (0..order).find(|&i| red.contains(&cv[i])).unwrap();
    let rot: Vec<Vertex> = (0..order).map(|j| cv[(start + j) % order]).collect();
    let mut rs = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for &v in &rot {
        if red.contains(&v) {
            rs.push(v);
            blocks.push(Vec::new());
        } else {
            blocks.last_mut().unwrap().push(v);
        }
    }
    if blocks.iter().any(|b| b.len() < 2) {
        return Err("a block between red vertices has fewer than two vertices".into());
    }
    let inv: BTreeMap<Vertex, Vertex> = phi.iter().map(|(&u, &r)| (r, u)).collect();
    let us: Vec<Vertex> = rs
        .iter()
        .map(|r| inv.get(r).copied().filter(|u| audit.i1.contains(u)))
        .collect::<Option<_>>()
        .ok_or("a bypassed red vertex has no partner in the cycle")?;
    let mut back = vec![0; 4 * k];
    let mut to3: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for i in 0..k {
        for (j, v) in [rs[i], blocks[i][0], *blocks[i].last().unwrap()].into_iter().enumerate() {
            back[3 * i + j] = v;
            to3.insert(v, 3 * i + j);
        }
        back[3 * k + i] = us[i];
        to3.insert(us[i], 3 * k + i);
    }
    let mut expect: BTreeSet<Vertex> = blocks.iter().flatten().copied().collect();
    expect.extend(&us);
    let got: BTreeSet<Vertex> = c1.vertices().iter().copied().collect();
    if got != expect {
        return Err("second cycle is not the blocks plus the partners".into());
    }
    for b in &blocks {
        if b.windows(2).any(|w| !c1.contains_edge(Edge::new(w[0], w[1]))) {
            return Err("second cycle does not traverse a block".into());
        }
    }
    let mut g3 = Graph::new(4 * k);
    for i in 0..k {
        g3.add_edge(3 * i, 3 * i + 1);
        g3.add_edge(3 * i + 1, 3 * i + 2);
        g3.add_edge(3 * i + 2, (3 * i + 3) % (3 * k));
        g3.add_edge(3 * i, 3 * k + i);
        if !g1.has_edge(rs[i], us[i]) {
            return Err("partner is not adjacent to its red vertex".into());
        }
    }
    for e in c1.edges() {
        if !(us.contains(&e.u) || us.contains(&e.v)) {
            continue;
        }
        match (to3.get(&e.u), to3.get(&e.v)) {
            (Some(&a), Some(&b)) => {
                g3.add_edge(a, b);
            }
            _ => return Err("partner is adjacent in the second cycle to a block interior".into()),
        }
    }
    let frame = MatchingFrame::new(
        g3,
        (0..k).flat_map(|i| [3 * i + 1, 3 * i + 2]).collect(),
        (0..k).flat_map(|i| [3 * i, 3 * k + i]).collect(),
        (0..k).map(|i| Edge::new(3 * i + 1, 3 * i + 2)).collect(),
        (0..k).map(|i| Edge::new(3 * i, 3 * k + i)).collect(),
        CycleOrPath::cycle((0..3 * k).collect()),
    )
    .map_err(|e| e.to_string())?;
    Ok(Frame { frame, back, blocks })
}

/// A `G3` cycle in `G1`, expanding each matching edge into its block.
fn expand_frame_cycle(f: &Frame, c3: &CycleOrPath) -> Vec<Vertex> {
    let vs = c3.vertices();
    let k3 = vs.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < k3 {
        let (a, b) = (vs[i], vs[(i + 1) % k3]);
        let block = |v: Vertex| (v < 3 * f.frame.k() && v % 3 != 0).then_some(v / 3);
        match (block(a), block(b)) {
            (Some(x), Some(y)) if x == y => {
                let blk = &f.blocks[x];
                if a % 3 == 1 {
                    out.extend(blk.iter().copied());
                } else {
                    out.extend(blk.iter().rev().copied());
                }
                i += 2;
                if i > k3 {
                    // The walk started mid-block; the block's first vertex
                    // was pushed twice.
                    out.remove(0);
                }
            }
            _ => {
                out.push(f.back[a]);
                i += 1;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayOptions {
    /// Return a longer path as soon as one is visible (a detour through a
    /// component, or a lift of the second cycle). Off, the run goes on to
    /// the audit and the matching frame.
    pub shortcuts: bool,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions { shortcuts: true }
    }
}

/// Replays the construction on an `(x, y)`-path `p` through `z` whose
/// internal vertices each have exactly two neighbours on `p`, trying to
/// reach a longer such path in `G`.
pub fn replay(g: &Graph, p: &CycleOrPath, z: Vertex, budget: &mut Budget) -> ReplayReport {
    replay_with(g, p, z, budget, ReplayOptions::default())
}

pub fn replay_with(g: &Graph, p: &CycleOrPath, z: Vertex, budget: &mut Budget, opts: ReplayOptions) -> ReplayReport {
    let mut report = ReplayReport {
        outcome: ReplayOutcome::NotApplicable(String::new()),
        audit: None,
        notes: Vec::new(),
    };
    let done = |mut r: ReplayReport, o: ReplayOutcome| {
        r.outcome = o;
        r
    };
    let stuck = |stage: Stage, reason: String| ReplayOutcome::Stuck { stage, reason };
    if !g.is_regular(3) || !is_k_connected(g, 2) {
        return done(report, ReplayOutcome::NotApplicable("host is not 2-connected cubic".into()));
    }
    if p.is_cycle() || p.check_in(g).is_err() || p.order() < 3 {
        return done(report, ReplayOutcome::NotApplicable("not a path with an interior".into()));
    }
    let pv = p.vertices();
    let (x, y) = (p.first(), p.last());
    if z == x || z == y || !p.contains_vertex(z) {
        return done(report, ReplayOutcome::NotApplicable("z is not internal".into()));
    }
    let on: BTreeSet<Vertex> = pv.iter().copied().collect();
    if let Some(v) = pv[1..pv.len() - 1]
        .iter()
        .find(|&&v| g.neighbors(v).iter().all(|w| on.contains(w)))
    {
        return done(report, ReplayOutcome::NotApplicable(format!("{v} has all neighbours on the path")));
    }
    let plen = p.len();
    let check_longer = |q: &CycleOrPath| q.check_in(g).is_ok() && q.first() == x && q.last() == y && q.contains_vertex(z) && q.len() > plen;

    // A component attached at consecutive path vertices is a detour.
    for comp in g.components_avoiding(pv).into_iter().filter(|_| opts.shortcuts) {
        for i in 0..pv.len() - 1 {
            let (a, b) = (pv[i], pv[i + 1]);
            let touches = |v: Vertex| comp.iter().any(|&w| g.has_edge(v, w));
            if touches(a) && touches(b) {
                let mid = through_component(g, &comp, a, b).expect("component is connected");
                let q: Vec<Vertex> = pv[..=i].iter().chain(&mid).chain(&pv[i + 1..]).copied().collect();
                let q = CycleOrPath::path(q);
                debug_assert!(check_longer(&q));
                return done(report, ReplayOutcome::Longer { path: q, stage: Stage::Detour });
            }
        }
    }

    let (g1, class) = match reduce_bridges(g, p, x) {
        Ok(r) => r,
        Err(e) => return done(report, stuck(Stage::Reduce, e.to_string())),
    };
    let p1 = class.map_path(p);
    let m1 = |v: Vertex| class.provenance.vertex(v).unwrap();
    let (x1, y1, u1, z1) = (m1(x), m1(y), m1(pv[1]), m1(z));

    // Red vertices and their pleasant partners.
    let mut phi: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut red: Vec<Vertex> = Vec::new();
    if !class.pleasant_vertices.is_empty() {
        let picks = match default_picks(&g1, &p1, &class) {
            Ok(t) => t,
            Err(e) => return done(report, stuck(Stage::Augment, e.to_string())),
        };
        let colors: BTreeMap<Vertex, usize> = match triangle_augment(&g1, &p1, &class, &picks) {
            Ok((ts, map)) => {
                let c = match triangle_3coloring(&ts) {
                    Ok(c) => c,
                    Err(e) => return done(report, ReplayOutcome::Falsified { stage: Stage::Coloring, reason: e.to_string() }),
                };
                match select_red_class(&c, &[u1, z1], &map) {
                    Ok(r) => red = r,
                    Err(e) => return done(report, stuck(Stage::Coloring, e.to_string())),
                }
                BTreeMap::new()
            }
            Err(ConstructionError::Parallel(raw)) => {
                report.notes.push("augmentation has parallel edges; colored the simple underlying graph".into());
                match raw.coloring() {
                    Some(c) => c,
                    None => return done(report, ReplayOutcome::Falsified { stage: Stage::Coloring, reason: "no 3-coloring".into() }),
                }
            }
            Err(e) => return done(report, stuck(Stage::Augment, e.to_string())),
        };
        if !colors.is_empty() {
            let pick = (0..3).find(|&col| colors.iter().all(|(&v, &c)| c != col || (v != u1 && v != z1)));
            match pick {
                Some(col) => red = colors.iter().filter(|(_, &c)| c == col).map(|(&v, _)| v).collect(),
                None => return done(report, stuck(Stage::Coloring, ColoringError::NoClass.to_string())),
            }
        }
        for (&ui, t) in class.pleasant_vertices.iter().zip(&picks) {
            let rs: Vec<Vertex> = t.iter().copied().filter(|v| red.contains(v)).collect();
            if rs.len() != 1 {
                return done(report, stuck(Stage::Coloring, format!("triangle of {ui} has {} red vertices", rs.len())));
            }
            phi.insert(ui, rs[0]);
        }
    }

    let anchor1 = Edge::new(x1, y1);
    let g1x = if g1.has_edge(x1, y1) {
        g1.clone()
    } else {
        g1.with_edge(x1, y1).expect("endpoints exist").0
    };
    let pairs: Vec<(Vertex, Vertex)> = phi.iter().map(|(&u, &r)| (u, r)).collect();
    let merges: Vec<(Vertex, Vertex)> = class.unpleasant_vertices.iter().map(|&v| (v, x1)).collect();
    let (g2, m12) = match contract_pairing(&g1x, &pairs, &merges, &[]) {
        Ok(r) => r,
        Err(e) => return done(report, stuck(Stage::Contract, e.to_string())),
    };
    let c1base = CycleOrPath::cycle(p1.vertices().to_vec());
    let c2base = CycleOrPath::cycle(p1.vertices().iter().map(|&v| m12.vertex(v).unwrap()).collect());
    let anchor2 = Edge::new(m12.vertex(x1).unwrap(), m12.vertex(y1).unwrap());
    let second = match find_second_cycle(&g2, &c2base, anchor2, budget) {
        Ok(s) => s,
        Err(LollipopError::Falsified(why)) => {
            return done(report, ReplayOutcome::Falsified { stage: Stage::Lemma, reason: why })
        }
        Err(e) => return done(report, stuck(Stage::Lemma, e.to_string())),
    };
    let Some(c1) = lift_contracted_cycle(&g1x, &m12, &second.cycle, anchor1) else {
        return done(report, stuck(Stage::PleasantLift, "no cycle of G1 projects onto the second cycle".into()));
    };
    if let Some(q) = lift_to_g(g, &class, c1.vertices(), Edge::new(x, y)).and_then(|s| open_at(&s, x, y)) {
        if opts.shortcuts && check_longer(&q) {
            return done(report, ReplayOutcome::Longer { path: q, stage: Stage::PleasantLift });
        }
    }
    let audit = match pleasant_cycle_audit(&g1x, &c1base, &c1, &red, &class, anchor1) {
        Ok(a) => a,
        Err(e) => return done(report, stuck(Stage::Audit, e.to_string())),
    };
    report.audit = Some(audit.clone());
    if !audit.claim_holds() {
        return done(report, stuck(Stage::Audit, "claim does not hold for this path".into()));
    }
    let frame = match build_frame(&g1x, &c1base, &c1, &audit, &phi) {
        Ok(f) => f,
        Err(e) => return done(report, stuck(Stage::Frame, e)),
    };
    let c3 = match matching_extension_search(&frame.frame, budget) {
        Ok(c) => c,
        Err(MatchingError::Falsified(k)) => {
            return done(report, ReplayOutcome::Falsified { stage: Stage::Matching, reason: format!("no cycle longer than {k}") })
        }
        Err(e) => return done(report, stuck(Stage::Matching, e.to_string())),
    };
    let cyc1 = expand_frame_cycle(&frame, &c3);
    match lift_to_g(g, &class, &cyc1, Edge::new(x, y)).and_then(|s| open_at(&s, x, y)) {
        Some(q) if check_longer(&q) => done(report, ReplayOutcome::Longer { path: q, stage: Stage::Matching }),
        _ => done(
            report,
            ReplayOutcome::Falsified {
                stage: Stage::FinalLift,
                reason: "the extended cycle does not give a longer path".into(),
            },
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path `0..=6` plus vertex 7 on 1, 2, 4.
    fn fan() -> Graph {
        let mut g = Graph::new(8);
        for i in 0..6 {
            g.add_edge(i, i + 1);
        }
        for v in [1, 2, 4] {
            g.add_edge(7, v);
        }
        g
    }

    #[test]
    fn reduce_contracts_and_replaces() {
        let g = fan();
        let p = CycleOrPath::path((0..7).collect());
        let (g1, class) = reduce_bridges(&g, &p, 0).unwrap();
        assert_eq!(g1, g);
        assert_eq!(class.pleasant_vertices, vec![7]);
        assert!(class.unpleasant_vertices.is_empty());

        // Two vertices 7-8 attached at 1 and 5 become the edge 1 5.
        let mut h = Graph::new(9);
        for e in Graph::path(7).edges() {
            h.add_edge(e.u, e.v);
        }
        h.add_edge(7, 8);
        h.add_edge(7, 1);
        h.add_edge(8, 5);
        let (h1, class) = reduce_bridges(&h, &p, 0).unwrap();
        assert_eq!(h1.n(), 7);
        assert!(h1.has_edge(1, 5));
        assert_eq!(class.pleasant_edges, vec![Edge::new(1, 5)]);
        assert_eq!(class.provenance.image(8), Image::Edge(Edge::new(1, 5)));
        let (_, class) = reduce_bridges(&h, &p, 6).unwrap();
        assert!(class.pleasant_edges.len() == 1);
        assert_eq!(reduce_bridges(&h, &p, 3).unwrap_err(), ConstructionError::NotEndpoint(3));
    }

    #[test]
    fn reduce_rejects_parallel_replacement() {
        let mut h = Graph::new(6);
        for e in Graph::path(5).edges() {
            h.add_edge(e.u, e.v);
        }
        h.add_edge(5, 1);
        h.add_edge(5, 2);
        let p = CycleOrPath::path((0..5).collect());
        assert_eq!(
            reduce_bridges(&h, &p, 0).unwrap_err(),
            ConstructionError::ParallelReplacement(Edge::new(1, 2))
        );
    }

    #[test]
    fn contraction_shortens_a_path() {
        // a - u - r - b becomes a - (ur) - b.
        let g = Graph::path(4);
        let (h, map) = contract_pairing(&g, &[(1, 2)], &[], &[]).unwrap();
        assert_eq!(h, Graph::path(3));
        assert_eq!(map.vertex(2), Some(1));
        assert_eq!(
            contract_pairing(&g, &[(0, 2)], &[], &[]).unwrap_err(),
            ConstructionError::MissingEdge(Edge::new(0, 2))
        );
        assert_eq!(
            contract_pairing(&g, &[], &[], &[Edge::new(0, 3)]).unwrap_err(),
            ConstructionError::MissingEdge(Edge::new(0, 3))
        );
    }

    #[test]
    fn audit_of_a_single_swap() {
        let g = fan();
        let p = CycleOrPath::path((0..7).collect());
        let (g1, class) = reduce_bridges(&g, &p, 0).unwrap();
        let g1x = g1.with_edge(0, 6).unwrap().0;
        let c = CycleOrPath::cycle((0..7).collect());
        let c1 = CycleOrPath::cycle(vec![0, 1, 2, 7, 4, 5, 6]);
        let a = pleasant_cycle_audit(&g1x, &c, &c1, &[3], &class, Edge::new(0, 6)).unwrap();
        assert_eq!(a.r1, vec![3]);
        assert_eq!(a.i1, vec![7]);
        assert_eq!((a.len_c, a.len_c1), (7, 7));
        assert_eq!(a.tally_single, 7);
        assert_eq!(a.dominators, vec![(3, vec![Dominator::Vertex(7)])]);
        assert!(a.claim_holds());

        let err = pleasant_cycle_audit(&g1x, &c, &c1, &[], &class, Edge::new(0, 6)).unwrap_err();
        assert!(matches!(err, ConstructionError::NotPleasant(_)));
    }

    #[test]
    fn augmentation_of_one_triangle() {
        // 0 - 1 - ... - 6 with 7 on 2, 3, 5 and 8 on 1, 4, 6 (8 pleasant? no:
        // it avoids x = 0, so both are pleasant).
        let mut g = Graph::new(9);
        for e in Graph::path(7).edges() {
            g.add_edge(e.u, e.v);
        }
        for v in [1, 3, 5] {
            g.add_edge(7, v);
        }
        for v in [2, 4, 6] {
            g.add_edge(8, v);
        }
        let p = CycleOrPath::path((0..7).collect());
        let (g1, class) = reduce_bridges(&g, &p, 0).unwrap();
        let p1 = class.map_path(&p);
        let picks = default_picks(&g1, &p1, &class).unwrap();
        assert_eq!(picks, vec![[1, 3, 5], [2, 4, 6]]);
        let (ts, map) = triangle_augment(&g1, &p1, &class, &picks).unwrap();
        assert_eq!(ts.host().n(), 6);
        assert_eq!(map.image(0), Image::Gone);
        assert_eq!(map.image(1), Image::Vertex(0));
        let c = triangle_3coloring(&ts).unwrap();
        for t in ts.triangles() {
            let mut cs: Vec<usize> = t.iter().map(|&v| c[v]).collect();
            cs.sort_unstable();
            assert_eq!(cs, vec![0, 1, 2]);
        }
    }

    #[test]
    fn replay_premises_and_detours() {
        let p = CycleOrPath::path(vec![0, 1, 2]);
        assert!(matches!(
            replay(&Graph::cycle(5), &p, 1, &mut Budget::unlimited()).outcome,
            ReplayOutcome::NotApplicable(_)
        ));
        // In K4 the fourth vertex sits next to 0 and 1.
        match replay(&Graph::complete(4), &p, 1, &mut Budget::unlimited()).outcome {
            ReplayOutcome::Longer { path, stage } => {
                assert_eq!(stage, Stage::Detour);
                assert_eq!(path.vertices(), &[0, 3, 1, 2]);
            }
            o => panic!("{o:?}"),
        }
    }
}
