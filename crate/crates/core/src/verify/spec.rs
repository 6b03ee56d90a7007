use std::fmt;

use thiserror::Error;

use crate::cycles::RequiredSet;
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct SpecError {
    /// 1-based.
    pub column: usize,
    pub message: String,
}

/// Expansion rules, applied per graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Directive {
    /// The empty set, once.
    None,
    AllEdges,
    AllVertices,
    AllVertexPairs,
    AllEdgeVertexPairs,
    AllVertexTriples,
    /// Every linear forest with `l + t <= min(cap, κ(G) - 2)`.
    AllForests { cap: Option<usize> },
}

/// A parsed `--set` argument: fixed elements plus at most one directive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSpec {
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
    pub directive: Option<Directive>,
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for e in &self.edges {
            parts.push(format!("edge:{}-{}", e.u, e.v));
        }
        for v in &self.vertices {
            parts.push(format!("vertex:{v}"));
        }
        if let Some(d) = self.directive {
            parts.push(
                match d {
                    Directive::None => "none".into(),
                    Directive::AllEdges => "all-edges".into(),
                    Directive::AllVertices => "all-vertices".into(),
                    Directive::AllVertexPairs => "all-vertex-pairs".into(),
                    Directive::AllEdgeVertexPairs => "all-edge-vertex-pairs".into(),
                    Directive::AllVertexTriples => "all-vertex-triples".into(),
                    Directive::AllForests { cap: None } => "all-forests".into(),
                    Directive::AllForests { cap: Some(c) } => format!("all-forests:{c}"),
                },
            );
        }
        write!(f, "{}", parts.join(";"))
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError {
            column: at + 1,
            message: message.into(),
        })
    }

    fn number(&mut self) -> Result<usize, SpecError> {
        let rest = &self.text[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err(self.pos, "expected a vertex number");
        }
        let v = rest[..len]
            .parse()
            .or_else(|_| self.err(self.pos, "vertex number too large"))?;
        self.pos += len;
        Ok(v)
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        if self.text.as_bytes().get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn edge(&mut self) -> Result<Edge, SpecError> {
        let start = self.pos;
        let a = self.number()?;
        self.expect(b'-')?;
        let b = self.number()?;
        if a == b {
            return self.err(start, "an edge needs two distinct ends");
        }
        Ok(Edge::new(a, b))
    }

    fn at_end_of_item(&self) -> bool {
        matches!(self.text.as_bytes().get(self.pos), None | Some(b';'))
    }
}

/// Parses `edge:<u>-<v>`, `vertex:<w>`, `forest:<u>-<v>[,<u>-<v>...]` and
/// the directives `all-edges`, `all-edge-vertex-pairs`, `all-vertex-triples`,
/// `all-vertices`, `all-vertex-pairs`, `all-forests[:<cap>]` and `none`,
/// joined by `;`.
pub fn parse_set_spec(text: &str) -> Result<SetSpec, SpecError> {
    let mut spec = SetSpec {
        edges: Vec::new(),
        vertices: Vec::new(),
        directive: None,
    };
    let mut cur = Cursor { text, pos: 0 };
    if text.trim().is_empty() {
        return cur.err(0, "empty set spec");
    }
    loop {
        let start = cur.pos;
        let rest = &text[start..];
        let word_len = rest
            .bytes()
            .take_while(|&b| b.is_ascii_lowercase() || b == b'-')
            .count();
        let word = &rest[..word_len];
        cur.pos += word_len;
        let mut set_directive = |d: Directive, cur: &Cursor| {
            if spec.directive.is_some() {
                return cur.err(start, "at most one directive");
            }
            spec.directive = Some(d);
            Ok(())
        };
        match word {
            "edge" => {
                cur.expect(b':')?;
                spec.edges.push(cur.edge()?);
            }
            "vertex" => {
                cur.expect(b':')?;
                spec.vertices.push(cur.number()?);
            }
            "forest" => {
                cur.expect(b':')?;
                spec.edges.push(cur.edge()?);
                while cur.text.as_bytes().get(cur.pos) == Some(&b',') {
                    cur.pos += 1;
                    spec.edges.push(cur.edge()?);
                }
            }
            "none" => set_directive(Directive::None, &cur)?,
            "all-edges" => set_directive(Directive::AllEdges, &cur)?,
            "all-vertices" => set_directive(Directive::AllVertices, &cur)?,
            "all-vertex-pairs" => set_directive(Directive::AllVertexPairs, &cur)?,
            "all-edge-vertex-pairs" => set_directive(Directive::AllEdgeVertexPairs, &cur)?,
            "all-vertex-triples" => set_directive(Directive::AllVertexTriples, &cur)?,
            "all-forests" => {
                let cap = if cur.text.as_bytes().get(cur.pos) == Some(&b':') {
                    cur.pos += 1;
                    Some(cur.number()?)
                } else {
                    None
                };
                set_directive(Directive::AllForests { cap }, &cur)?;
            }
            "" => return cur.err(start, "expected an item"),
            other => return cur.err(start, format!("unknown item '{other}'")),
        }
        if !cur.at_end_of_item() {
            return cur.err(cur.pos, "unexpected character");
        }
        if cur.pos == text.len() {
            break;
        }
        cur.pos += 1;
    }
    // Fixed elements must already form a linear forest.
    RequiredSet::new(spec.edges.iter().copied(), spec.vertices.iter().copied()).map_err(|e| SpecError {
        column: 1,
        message: e.to_string(),
    })?;
    Ok(spec)
}

/// Every linear forest of `g` with `l + t <= max_size`, smallest first.
pub fn linear_forests(g: &Graph, max_size: usize) -> Vec<RequiredSet> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Edge> = Vec::new();
    fn pick_edges(g: &Graph, edges: &[Edge], from: usize, room: usize, chosen: &mut Vec<Edge>, out: &mut Vec<RequiredSet>) {
        // Isolated vertices for the current edge set.
        let on: Vec<bool> = (0..g.n()).map(|v| chosen.iter().any(|e| e.has(v))).collect();
        let mut verts = Vec::new();
        fn pick_vertices(g: &Graph, on: &[bool], from: usize, room: usize, chosen: &[Edge], verts: &mut Vec<Vertex>, out: &mut Vec<RequiredSet>) {
            out.push(RequiredSet::new(chosen.iter().copied(), verts.iter().copied()).expect("checked forest"));
            if room == 0 {
                return;
            }
            for v in from..g.n() {
                if !on[v] {
                    verts.push(v);
                    pick_vertices(g, on, v + 1, room - 1, chosen, verts, out);
                    verts.pop();
                }
            }
        }
        pick_vertices(g, &on, 0, room, chosen, &mut verts, out);
        if room == 0 {
            return;
        }
        for i in from..edges.len() {
            chosen.push(edges[i]);
            if RequiredSet::new(chosen.iter().copied(), []).is_ok() {
                pick_edges(g, edges, i + 1, room - 1, chosen, out);
            }
            chosen.pop();
        }
    }
    pick_edges(g, &edges, 0, max_size, &mut chosen, &mut out);
    out.sort_by(|a, b| {
        (a.l() + a.t(), a.l(), a.edges(), a.isolated()).cmp(&(b.l() + b.t(), b.l(), b.edges(), b.isolated()))
    });
    out
}

impl SetSpec {
    pub fn concrete(edges: Vec<Edge>, vertices: Vec<Vertex>) -> SetSpec {
        SetSpec {
            edges,
            vertices,
            directive: None,
        }
    }

    pub fn directive(d: Directive) -> SetSpec {
        SetSpec {
            edges: Vec::new(),
            vertices: Vec::new(),
            directive: Some(d),
        }
    }

    /// The instantiations for `g`. Combinations that are not linear forests
    /// are left out. `kappa` is needed only by `all-forests`.
    pub fn expand(&self, g: &Graph, kappa: impl FnOnce() -> usize) -> Vec<RequiredSet> {
        let n = g.n();
        let edges: Vec<Edge> = g.edges().collect();
        let raw: Vec<(Vec<Edge>, Vec<Vertex>)> = match self.directive {
            None | Some(Directive::None) => vec![(vec![], vec![])],
            Some(Directive::AllEdges) => edges.iter().map(|&e| (vec![e], vec![])).collect(),
            Some(Directive::AllVertices) => (0..n).map(|v| (vec![], vec![v])).collect(),
            Some(Directive::AllVertexPairs) => (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (vec![], vec![a, b])))
                .collect(),
            Some(Directive::AllEdgeVertexPairs) => edges
                .iter()
                .flat_map(|&e| (0..n).filter(move |&v| !e.has(v)).map(move |v| (vec![e], vec![v])))
                .collect(),
            Some(Directive::AllVertexTriples) => (0..n)
                .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (vec![], vec![a, b, c]))))
                .collect(),
            Some(Directive::AllForests { cap }) => {
                let room = kappa().saturating_sub(2).min(cap.unwrap_or(usize::MAX));
                linear_forests(g, room)
                    .into_iter()
                    .map(|r| (r.edges().to_vec(), r.isolated().to_vec()))
                    .collect()
            }
        };
        raw.into_iter()
            .filter_map(|(mut es, mut vs)| {
                es.extend(&self.edges);
                vs.extend(&self.vertices);
                let distinct = es.iter().collect::<std::collections::BTreeSet<_>>().len() == es.len()
                    && vs.iter().collect::<std::collections::BTreeSet<_>>().len() == vs.len();
                distinct.then(|| RequiredSet::new(es, vs).ok()).flatten()
            })
            .collect()
    }
}
