use std::time::Instant;

use crate::connectivity::vertex_connectivity;
use crate::corpus::CorpusLine;
use crate::cycles::{
    chords_of, cycle_at_least, find_chordless_cycle_through, find_cycle_through, find_path_through,
    full_neighbor_internal_vertex, longer_cycle_through, longest_path_through, Budget, CycleOrPath,
    RequiredSet, SearchError,
};
use crate::graph::{Edge, Graph, Vertex};
use crate::graph6;
use crate::planar::{planar_embedding, TutteCycles, TutteError};

use super::report::{Attestation, CheckId, Outcome, Report, Stats, Witness};
use super::spec::SetSpec;

/// Cycles found earlier for the same graph. A later instantiation whose set
/// one of them covers starts from its length instead of from scratch.
struct Known {
    edge_index: Vec<u8>,
    n: usize,
    cycles: Vec<(u64, u128, CycleOrPath)>,
    usable: bool,
}

const KNOWN_CAP: usize = 32;

impl Known {
    fn new(g: &Graph) -> Known {
        let n = g.n();
        let usable = n <= 64 && g.m() <= 128;
        let mut edge_index = vec![u8::MAX; if usable { n * n } else { 0 }];
        if usable {
            for (i, e) in g.edges().enumerate() {
                edge_index[e.u * n + e.v] = i as u8;
                edge_index[e.v * n + e.u] = i as u8;
            }
        }
        Known {
            edge_index,
            n,
            cycles: Vec::new(),
            usable,
        }
    }

    fn edge_mask(&self, es: impl IntoIterator<Item = Edge>) -> u128 {
        es.into_iter()
            .fold(0, |m, e| m | 1u128 << self.edge_index[e.u * self.n + e.v])
    }

    fn key(&self, r: &RequiredSet) -> (u64, u128) {
        let vs = r.all_vertices().into_iter().fold(0u64, |m, v| m | 1 << v);
        (vs, self.edge_mask(r.edges().iter().copied()))
    }

    /// The longest remembered cycle through `r`.
    fn best(&self, r: &RequiredSet) -> Option<&CycleOrPath> {
        if !self.usable {
            return None;
        }
        let (vs, es) = self.key(r);
        self.cycles
            .iter()
            .find(|(cv, ce, _)| cv & vs == vs && ce & es == es)
            .map(|(_, _, c)| c)
    }

    fn remember(&mut self, c: &CycleOrPath) {
        if !self.usable || self.cycles.iter().any(|(_, _, k)| k == c) {
            return;
        }
        let vs = c.vertices().iter().fold(0u64, |m, &v| m | 1 << v);
        let es = self.edge_mask(c.edges());
        // Longest first, so `best` returns the longest cover.
        let at = self.cycles.partition_point(|(_, _, k)| k.len() >= c.len());
        if at < KNOWN_CAP {
            self.cycles.insert(at, (vs, es, c.clone()));
            self.cycles.truncate(KNOWN_CAP);
        }
    }
}

/// Per-graph state shared by its instantiations.
pub(super) struct GraphCtx<'a> {
    g: &'a Graph,
    graph6: String,
    limit: u64,
    kappa: Option<usize>,
    known: Known,
}

struct Verdict {
    outcome: Outcome,
    witness: Option<Witness>,
    note: Option<String>,
}

impl Verdict {
    fn new(outcome: Outcome, witness: Option<Witness>) -> Verdict {
        Verdict {
            outcome,
            witness,
            note: None,
        }
    }

    fn noted(outcome: Outcome, note: impl Into<String>) -> Verdict {
        Verdict {
            outcome,
            witness: None,
            note: Some(note.into()),
        }
    }
}

impl<'a> GraphCtx<'a> {
    pub(super) fn new(g: &'a Graph, limit: u64) -> GraphCtx<'a> {
        GraphCtx {
            g,
            graph6: graph6::encode(g).unwrap_or_default(),
            limit,
            kappa: None,
            known: Known::new(g),
        }
    }

    pub(super) fn kappa(&mut self) -> usize {
        *self.kappa.get_or_insert_with(|| vertex_connectivity(self.g))
    }

    fn attest(&self, b: &Budget) -> Attestation {
        Attestation {
            nodes: b.used(),
            budget: self.limit,
            exhaustive: true,
        }
    }

    /// The maximum length of a cycle through `r` and one such cycle.
    fn longest(&mut self, r: &RequiredSet, b: &mut Budget) -> Result<Option<CycleOrPath>, SearchError> {
        let lower = self.known.best(r).cloned();
        if lower.as_ref().is_some_and(|c| c.order() == self.g.n()) {
            return Ok(lower);
        }
        let than = lower.as_ref().map_or(0, |c| c.len());
        match longer_cycle_through(self.g, r, than, b)? {
            Some(c) => {
                self.known.remember(&c);
                Ok(Some(c))
            }
            None => Ok(lower),
        }
    }

    fn chorded(&self, c: &CycleOrPath) -> Witness {
        Witness::Chorded {
            length: c.len(),
            cycle: c.vertices().to_vec(),
            chords: chords_of(self.g, c),
        }
    }

    /// Every longest cycle through `r` has a chord.
    fn universal(&mut self, r: &RequiredSet, b: &mut Budget) -> Result<Verdict, SearchError> {
        let Some(c) = self.longest(r, b)? else {
            return Ok(Verdict::noted(Outcome::Verified, "no cycle through the set"));
        };
        let g = self.g;
        // Every edge off a Hamiltonian cycle is a chord of it.
        if c.order() == g.n() && g.m() > g.n() {
            return Ok(Verdict::new(Outcome::Verified, Some(self.chorded(&c))));
        }
        match find_chordless_cycle_through(g, r, c.len(), b)? {
            Some(bad) => Ok(Verdict::new(
                Outcome::Counterexample,
                Some(Witness::Chordless {
                    graph6: self.graph6.clone(),
                    required: r.into(),
                    length: bad.len(),
                    cycle: bad.vertices().to_vec(),
                    chords: chords_of(g, &bad),
                    attestation: self.attest(b),
                }),
            )),
            None => Ok(Verdict::new(Outcome::Verified, Some(self.chorded(&c)))),
        }
    }

    /// Some longest cycle through `r` has a chord.
    fn existential(&mut self, r: &RequiredSet, b: &mut Budget) -> Result<Verdict, SearchError> {
        let Some(c) = self.longest(r, b)? else {
            return Ok(Verdict::noted(Outcome::Verified, "no cycle through the set"));
        };
        let g = self.g;
        if !chords_of(g, &c).is_empty() {
            return Ok(Verdict::new(Outcome::Verified, Some(self.chorded(&c))));
        }
        match find_cycle_through(g, r, c.len(), |w| !chords_of(g, w).is_empty(), b)? {
            Some(w) => {
                self.known.remember(&w);
                Ok(Verdict::new(Outcome::Verified, Some(self.chorded(&w))))
            }
            None => Ok(Verdict::new(
                Outcome::Counterexample,
                Some(Witness::Chordless {
                    graph6: self.graph6.clone(),
                    required: r.into(),
                    length: c.len(),
                    cycle: c.vertices().to_vec(),
                    chords: Vec::new(),
                    attestation: self.attest(b),
                }),
            )),
        }
    }

    /// A cycle through `r` of length at least `min(n, 2δ - l)`.
    fn bound(&mut self, r: &RequiredSet, b: &mut Budget) -> Result<Verdict, SearchError> {
        let g = self.g;
        let bound = g.n().min((2 * g.min_degree()).saturating_sub(r.l()));
        let witness = |c: &CycleOrPath| Witness::Bound {
            bound,
            length: c.len(),
            cycle: c.vertices().to_vec(),
        };
        if let Some(c) = self.known.best(r).filter(|c| c.len() >= bound) {
            return Ok(Verdict::new(Outcome::Verified, Some(witness(c))));
        }
        match cycle_at_least(g, r, bound, b)? {
            Some(c) => {
                self.known.remember(&c);
                Ok(Verdict::new(Outcome::Verified, Some(witness(&c))))
            }
            None => {
                // Reported for context only; the verdict stands without it.
                let longest = self.longest(r, b).ok().flatten().map(|c| c.len());
                Ok(Verdict::new(
                    Outcome::Counterexample,
                    Some(Witness::BelowBound {
                        graph6: self.graph6.clone(),
                        required: r.into(),
                        bound,
                        longest,
                        attestation: self.attest(b),
                    }),
                ))
            }
        }
    }

    /// Every longest `(x, y)`-path through `z` has an internal vertex with
    /// all its neighbours on the path.
    fn full_vertex(&mut self, x: Vertex, y: Vertex, z: Vertex, b: &mut Budget) -> Result<Verdict, SearchError> {
        let g = self.g;
        let r = RequiredSet::vertices_only([z]);
        let Some(p) = longest_path_through(g, x, y, &r, b)? else {
            return Ok(Verdict::noted(Outcome::Verified, "no path through the set"));
        };
        let found = |p: &CycleOrPath, vertex| Witness::FullVertex {
            x,
            y,
            z,
            length: p.len(),
            path: p.vertices().to_vec(),
            vertex,
        };
        // On a Hamiltonian path every neighbour is on the path.
        if p.order() < g.n() {
            if let Some(bad) = find_path_through(g, x, y, &r, p.len(), |q| full_neighbor_internal_vertex(g, q).is_none(), b)? {
                return Ok(Verdict::new(
                    Outcome::Counterexample,
                    Some(Witness::NoFullVertex {
                        graph6: self.graph6.clone(),
                        x,
                        y,
                        z,
                        length: bad.len(),
                        path: bad.vertices().to_vec(),
                        attestation: self.attest(b),
                    }),
                ));
            }
        }
        match full_neighbor_internal_vertex(g, &p) {
            Some(v) => Ok(Verdict::new(Outcome::Verified, Some(found(&p, v)))),
            // Only a path without internal vertices gets here.
            None => Ok(Verdict::noted(Outcome::Verified, "path has no internal vertex")),
        }
    }

    fn tutte(&mut self, b: &mut Budget) -> Result<Verdict, SearchError> {
        let g = self.g;
        let Some(emb) = planar_embedding(g) else {
            return Ok(Verdict::noted(Outcome::HypothesisNotMet, "not planar"));
        };
        let tc = match TutteCycles::new(g, &emb, b) {
            Ok(tc) => tc,
            Err(TutteError::Search(e)) => return Err(e),
            Err(TutteError::NotBiconnected) => return Ok(Verdict::noted(Outcome::HypothesisNotMet, "not 2-connected")),
            Err(e) => return Ok(Verdict::noted(Outcome::InputError, e.to_string())),
        };
        let pairs = tc.pairs();
        for &(e, e_prime) in &pairs {
            if tc.find(e, e_prime).is_err() {
                return Ok(Verdict::new(
                    Outcome::FalsificationEvent,
                    Some(Witness::TutteMissing {
                        graph6: self.graph6.clone(),
                        e,
                        e_prime,
                        attestation: self.attest(b),
                    }),
                ));
            }
        }
        Ok(Verdict::new(
            Outcome::Verified,
            Some(Witness::Tutte {
                pairs: pairs.len(),
                cycles: tc.cycle_count(),
            }),
        ))
    }
}

fn shape(r: &RequiredSet) -> (usize, usize) {
    (r.l(), r.t())
}

/// Hypotheses on the graph alone.
fn graph_hypothesis(check: CheckId, ctx: &mut GraphCtx) -> Result<(), String> {
    let g = ctx.g;
    let cubic = g.n() > 0 && g.is_regular(3);
    let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    if g.n() > 64 {
        return Err("more than 64 vertices".into());
    }
    match check {
        CheckId::T1_7 | CheckId::C1_8 | CheckId::C1_9 => {
            need(cubic, "not cubic")?;
            need(ctx.kappa() >= 2, "not 2-connected")
        }
        CheckId::T4_1 => {
            need(g.min_degree() >= 4, "minimum degree below 4")?;
            need(ctx.kappa() >= 3, "not 3-connected")
        }
        CheckId::T5_1 => {
            need(g.min_degree() >= 4, "minimum degree below 4")?;
            need(ctx.kappa() >= 3, "not 3-connected")?;
            need(crate::planar::is_planar(g), "not planar")
        }
        CheckId::C1_12 => {
            need(cubic || g.min_degree() >= 4, "neither cubic nor of minimum degree 4")?;
            need(ctx.kappa() >= 3, "not 3-connected")?;
            need(crate::planar::is_planar(g), "not planar")
        }
        CheckId::T6_1 | CheckId::C6_2 => need(ctx.kappa() >= 2, "not 2-connected"),
        CheckId::Tutte => {
            need(ctx.kappa() >= 2, "not 2-connected")?;
            need(crate::planar::is_planar(g), "not planar")
        }
        CheckId::C1_1 | CheckId::C1_6 => need(ctx.kappa() >= 3, "not 3-connected"),
    }
}

/// Hypotheses on the required set.
fn set_hypothesis(check: CheckId, ctx: &mut GraphCtx, r: &RequiredSet) -> Result<(), String> {
    let s = shape(r);
    let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    match check {
        CheckId::T1_7 => need(s == (0, 3), "not three vertices"),
        CheckId::C1_8 => need(s == (1, 1), "not an edge plus a vertex"),
        CheckId::C1_9 => need(s.0 == 0 && s.1 <= 2, "not at most two vertices"),
        CheckId::T4_1 | CheckId::C1_6 => need(s == (1, 0), "not a single edge"),
        CheckId::T5_1 => need(s == (0, 3) || s == (1, 1), "not three vertices or an edge plus a vertex"),
        CheckId::C1_12 => need(s == (1, 1) || (s.0 == 0 && s.1 <= 2), "not an edge plus a vertex or at most two vertices"),
        CheckId::T6_1 | CheckId::C6_2 => {
            let k = ctx.kappa();
            need(s.0 + s.1 + 2 <= k, "l + t exceeds κ - 2")
        }
        CheckId::C1_1 | CheckId::Tutte => need(r.is_empty(), "expects the empty set"),
    }
}

fn run_instance(check: CheckId, ctx: &mut GraphCtx, r: &RequiredSet, roles: Option<[Vertex; 3]>) -> (Verdict, u64) {
    let mut b = Budget::new(ctx.limit);
    let result = match check {
        CheckId::T1_7 => {
            let [x, y, z] = roles.expect("T1.7 instantiations carry roles");
            ctx.full_vertex(x, y, z, &mut b)
        }
        CheckId::T4_1 => ctx.existential(r, &mut b),
        CheckId::T6_1 => ctx.bound(r, &mut b),
        CheckId::Tutte => ctx.tutte(&mut b),
        _ => ctx.universal(r, &mut b),
    };
    let verdict = match result {
        Ok(v) => v,
        Err(SearchError::BudgetExhausted { nodes }) => {
            Verdict::noted(Outcome::InconclusiveBudget, format!("budget exhausted after {nodes} nodes"))
        }
        Err(e) => Verdict::noted(Outcome::InputError, e.to_string()),
    };
    (verdict, b.used())
}

/// Every report for one corpus line, in instantiation order.
pub fn check_line(line: &CorpusLine, check: CheckId, set: &SetSpec, limit: u64) -> Vec<Report> {
    let graph_id = line.id();
    let report = |instance, required, v: Verdict, nodes, started: Instant| Report {
        graph_id: graph_id.clone(),
        check_id: check,
        instance,
        required,
        outcome: v.outcome,
        witness: v.witness,
        note: v.note,
        stats: Stats {
            nodes,
            wall_us: started.elapsed().as_micros() as u64,
        },
    };
    let started = Instant::now();
    let g = match line.parse() {
        Ok(g) => g,
        Err(e) => return vec![report(0, None, Verdict::noted(Outcome::InputError, e.to_string()), 0, started)],
    };
    let mut ctx = GraphCtx::new(&g, limit);
    if let Err(why) = graph_hypothesis(check, &mut ctx) {
        return vec![report(0, None, Verdict::noted(Outcome::HypothesisNotMet, why), 0, started)];
    }
    let sets = set.expand(&g, || ctx.kappa());
    let mut out = Vec::new();
    for r in &sets {
        let started = Instant::now();
        if let Err(e) = r.check_in(&g) {
            out.push(report(out.len(), Some(r.into()), Verdict::noted(Outcome::InputError, e.to_string()), 0, started));
            continue;
        }
        if let Err(why) = set_hypothesis(check, &mut ctx, r) {
            out.push(report(out.len(), Some(r.into()), Verdict::noted(Outcome::HypothesisNotMet, why), 0, started));
            continue;
        }
        if check == CheckId::T1_7 {
            let v = r.isolated();
            for (x, y, z) in [(v[0], v[1], v[2]), (v[0], v[2], v[1]), (v[1], v[2], v[0])] {
                let started = Instant::now();
                let (verdict, nodes) = run_instance(check, &mut ctx, r, Some([x, y, z]));
                out.push(report(out.len(), Some(r.into()), verdict, nodes, started));
            }
            continue;
        }
        let (verdict, nodes) = run_instance(check, &mut ctx, r, None);
        out.push(report(out.len(), Some(r.into()), verdict, nodes, started));
    }
    out
}
