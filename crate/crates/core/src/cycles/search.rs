//! Depth-first search over simple paths on bit-mask adjacency.
//!
//! Required edges are followed as soon as one of their endpoints is entered,
//! so a required path component is always traversed end to end. A branch is
//! cut when the vertices still reachable from the current end cannot lift it
//! to the collector's floor or cannot reach a missing required vertex.

use std::collections::BTreeSet;

use super::{Budget, CycleOrPath, RequiredSet, SearchError};
use crate::graph::{Graph, Vertex};

pub(super) struct Problem {
    n: usize,
    adj: Vec<u64>,
    fnbr: Vec<u64>,
    required: u64,
}

impl Problem {
    fn new(g: &Graph, r: &RequiredSet) -> Result<Problem, SearchError> {
        let adj = g.masks().ok_or(SearchError::TooLarge(g.n()))?;
        r.check_in(g)?;
        let mut fnbr = vec![0u64; g.n()];
        for e in r.edges() {
            fnbr[e.u] |= 1 << e.v;
            fnbr[e.v] |= 1 << e.u;
        }
        let required = r.all_vertices().iter().fold(0u64, |acc, &v| acc | 1 << v);
        Ok(Problem {
            n: g.n(),
            adj,
            fnbr,
            required,
        })
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            !0
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn fdeg(&self, v: usize) -> u32 {
        self.fnbr[v].count_ones()
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn reach_from(adj: &[u64], v: usize, avail: u64) -> u64 {
    let mut reach = adj[v] & avail;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[x];
        }
        frontier = next & avail & !reach;
        reach |= frontier;
    }
    reach
}

/// Decides which complete walks are kept. Lengths are vertex counts.
trait Collector {
    fn floor(&self) -> usize;
    fn ceiling(&self) -> usize;
    fn admit(&self, _p: &Problem, _path: &[usize], _visited: u64, _w: usize) -> bool {
        true
    }
    /// Returns true to stop the whole search.
    fn offer(&mut self, path: &[usize]) -> bool;
}

#[derive(Clone, Copy)]
enum Mode {
    Cycle { start: usize, free_close: bool },
    Path { end: usize },
}

struct Dfs<'a, C> {
    p: &'a Problem,
    allowed: u64,
    mode: Mode,
    budget: &'a mut Budget,
    col: &'a mut C,
    path: Vec<usize>,
    visited: u64,
}

impl<C: Collector> Dfs<'_, C> {
    fn run(&mut self, start: usize, forced: Option<usize>) -> Result<bool, SearchError> {
        self.path.clear();
        self.path.push(start);
        self.visited = bit(start);
        self.step(start, forced)
    }

    fn step(&mut self, v: usize, forced: Option<usize>) -> Result<bool, SearchError> {
        self.budget.tick()?;
        let p = self.p;
        let len = self.path.len();
        let covered = self.visited & p.required == p.required;

        if let Mode::Cycle {
            start: s,
            free_close,
        } = self.mode
        {
            if len >= 3 && p.adj[v] & bit(s) != 0 && covered {
                let ok = match forced {
                    Some(w) => w == s,
                    None => free_close && p.fnbr[v] & bit(s) == 0,
                };
                if ok
                    && len >= self.col.floor()
                    && len <= self.col.ceiling()
                    && self.col.offer(&self.path)
                {
                    return Ok(true);
                }
            }
            if forced == Some(s) {
                return Ok(false);
            }
        }
        if len >= self.col.ceiling() {
            return Ok(false);
        }
        let cands = match forced {
            Some(w) if self.visited & bit(w) != 0 => return Ok(false),
            Some(w) => bit(w),
            None => p.adj[v] & self.allowed & !self.visited,
        };
        if cands == 0 {
            return Ok(false);
        }

        let avail = self.allowed & !self.visited;
        let reach = reach_from(&p.adj, v, avail);
        let missing = p.required & !self.visited;
        if missing & !reach != 0 {
            return Ok(false);
        }
        if len + (reach.count_ones() as usize) < self.col.floor() {
            return Ok(false);
        }
        match self.mode {
            Mode::Cycle { start: s, .. } => {
                if len >= 2 && p.adj[s] & (reach | bit(v)) == 0 {
                    return Ok(false);
                }
                let around = reach | bit(v) | bit(s);
                let mut m = missing;
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if (p.adj[w] & around).count_ones() < 2 {
                        return Ok(false);
                    }
                }
            }
            Mode::Path { end } => {
                if reach & bit(end) == 0 {
                    return Ok(false);
                }
                let around = reach | bit(v);
                let mut m = missing & !bit(end);
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if (p.adj[w] & around).count_ones() < 2 {
                        return Ok(false);
                    }
                }
            }
        }

        let mut c = cands;
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            if let Mode::Path { end } = self.mode {
                if w == end {
                    if self.finish(v, w)? {
                        return Ok(true);
                    }
                    continue;
                }
            }
            let via_forest = p.fnbr[v] & bit(w) != 0;
            let rest = if via_forest {
                p.fnbr[w] & !bit(v)
            } else {
                p.fnbr[w]
            };
            let next = match rest.count_ones() {
                0 => None,
                1 => {
                    let x = rest.trailing_zeros() as usize;
                    let closes = matches!(self.mode, Mode::Cycle { start, .. } if start == x);
                    if self.visited & bit(x) != 0 && !closes {
                        continue;
                    }
                    Some(x)
                }
                _ => continue,
            };
            if !self.col.admit(p, &self.path, self.visited, w) {
                continue;
            }
            self.path.push(w);
            self.visited |= bit(w);
            let stop = self.step(w, next)?;
            self.path.pop();
            self.visited &= !bit(w);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn finish(&mut self, v: usize, y: usize) -> Result<bool, SearchError> {
        let p = self.p;
        let via_forest = p.fnbr[v] & bit(y) != 0;
        let rest = if via_forest {
            p.fnbr[y] & !bit(v)
        } else {
            p.fnbr[y]
        };
        let len = self.path.len() + 1;
        if rest != 0
            || (self.visited | bit(y)) & p.required != p.required
            || len < self.col.floor()
            || len > self.col.ceiling()
            || !self.col.admit(p, &self.path, self.visited, y)
        {
            return Ok(false);
        }
        self.path.push(y);
        let stop = self.col.offer(&self.path);
        self.path.pop();
        Ok(stop)
    }
}

fn search_cycles<C: Collector>(
    p: &Problem,
    r: &RequiredSet,
    budget: &mut Budget,
    col: &mut C,
) -> Result<(), SearchError> {
    let full = p.full();
    let dfs = |start: usize,
               forced: Option<usize>,
               allowed: u64,
               free_close: bool,
               col: &mut C,
               budget: &mut Budget| {
        Dfs {
            p,
            allowed,
            mode: Mode::Cycle { start, free_close },
            budget,
            col,
            path: Vec::with_capacity(p.n),
            visited: 0,
        }
        .run(start, forced)
    };
    if r.is_empty() {
        for s in 0..p.n {
            if p.n - s < col.floor() {
                break;
            }
            let allowed = full & !(bit(s) - 1);
            if dfs(s, None, allowed, true, col, budget)? {
                break;
            }
        }
        return Ok(());
    }
    let start = (0..p.n).find(|&v| p.fdeg(v) == 1);
    match start {
        Some(s) => {
            let a = p.fnbr[s].trailing_zeros() as usize;
            dfs(s, Some(a), full, true, col, budget)?;
        }
        None => {
            let s = r.isolated()[0];
            dfs(s, None, full, true, col, budget)?;
        }
    }
    Ok(())
}

fn search_paths<C: Collector>(
    p: &Problem,
    x: Vertex,
    y: Vertex,
    budget: &mut Budget,
    col: &mut C,
) -> Result<(), SearchError> {
    if x == y {
        return Err(SearchError::SameEndpoints(x));
    }
    for v in [x, y] {
        if v >= p.n {
            return Err(super::RequiredSetError::MissingVertex(v).into());
        }
    }
    if p.fdeg(x) == 2 || p.fdeg(y) == 2 {
        return Ok(());
    }
    let forced = (p.fdeg(x) == 1).then(|| p.fnbr[x].trailing_zeros() as usize);
    Dfs {
        p,
        allowed: p.full(),
        mode: Mode::Path { end: y },
        budget,
        col,
        path: Vec::with_capacity(p.n),
        visited: 0,
    }
    .run(x, forced)?;
    Ok(())
}

struct Best {
    best: Option<Vec<usize>>,
    min: usize,
    stop_at: usize,
}

impl Collector for Best {
    fn floor(&self) -> usize {
        self.best.as_ref().map_or(self.min, |b| b.len() + 1)
    }
    fn ceiling(&self) -> usize {
        usize::MAX
    }
    fn offer(&mut self, path: &[usize]) -> bool {
        self.best = Some(path.to_vec());
        path.len() >= self.stop_at
    }
}

struct AllBest {
    len: usize,
    found: BTreeSet<Vec<usize>>,
    closed: bool,
}

impl Collector for AllBest {
    fn floor(&self) -> usize {
        self.len
    }
    fn ceiling(&self) -> usize {
        usize::MAX
    }
    fn offer(&mut self, path: &[usize]) -> bool {
        if path.len() > self.len {
            self.len = path.len();
            self.found.clear();
        }
        let key = if self.closed {
            CycleOrPath::cycle(path.to_vec())
                .canonical()
                .vertices()
                .to_vec()
        } else {
            path.to_vec()
        };
        self.found.insert(key);
        false
    }
}

struct Every {
    found: BTreeSet<(usize, Vec<usize>)>,
}

impl Collector for Every {
    fn floor(&self) -> usize {
        3
    }
    fn ceiling(&self) -> usize {
        usize::MAX
    }
    fn offer(&mut self, path: &[usize]) -> bool {
        let c = CycleOrPath::cycle(path.to_vec()).canonical();
        self.found.insert((path.len(), c.vertices().to_vec()));
        false
    }
}

struct Exact<F> {
    order: usize,
    closed: bool,
    accept: F,
    hit: Option<CycleOrPath>,
}

impl<F: FnMut(&CycleOrPath) -> bool> Collector for Exact<F> {
    fn floor(&self) -> usize {
        self.order
    }
    fn ceiling(&self) -> usize {
        self.order
    }
    fn offer(&mut self, path: &[usize]) -> bool {
        let w = if self.closed {
            CycleOrPath::cycle(path.to_vec())
        } else {
            CycleOrPath::path(path.to_vec())
        };
        if (self.accept)(&w) {
            self.hit = Some(w);
            true
        } else {
            false
        }
    }
}

/// Keeps the partial cycle an induced path, so the first complete cycle of
/// the given order is chordless.
struct Induced {
    order: usize,
    hit: Option<Vec<usize>>,
}

impl Collector for Induced {
    fn floor(&self) -> usize {
        self.order
    }
    fn ceiling(&self) -> usize {
        self.order
    }
    fn admit(&self, p: &Problem, path: &[usize], visited: u64, w: usize) -> bool {
        let k = path.len();
        let mut touch = p.adj[w] & visited & !bit(path[k - 1]);
        if k + 1 == self.order {
            touch &= !bit(path[0]);
        }
        touch == 0
    }
    fn offer(&mut self, path: &[usize]) -> bool {
        self.hit = Some(path.to_vec());
        true
    }
}

/// A longest cycle through `r`, in canonical rotation, or `None` when no
/// cycle passes through `r`.
pub fn longest_cycle_through(
    g: &Graph,
    r: &RequiredSet,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let mut col = Best {
        best: None,
        min: 3,
        stop_at: p.n,
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col.best.map(|vs| CycleOrPath::cycle(vs).canonical()))
}

/// A longest cycle through `r` among those with more than `than` edges.
/// `None` means no cycle through `r` is longer than `than`.
pub fn longer_cycle_through(
    g: &Graph,
    r: &RequiredSet,
    than: usize,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let mut col = Best {
        best: None,
        min: (than + 1).max(3),
        stop_at: p.n,
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col.best.map(|vs| CycleOrPath::cycle(vs).canonical()))
}

/// The first cycle through `r` found with at least `bound` edges.
pub fn cycle_at_least(
    g: &Graph,
    r: &RequiredSet,
    bound: usize,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let bound = bound.max(3);
    if bound > p.n {
        return Ok(None);
    }
    let mut col = Best {
        best: None,
        min: bound,
        stop_at: bound,
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col.best.map(|vs| CycleOrPath::cycle(vs).canonical()))
}

/// All longest cycles through `r`, deduplicated up to rotation and
/// reflection, sorted by canonical form.
pub fn enumerate_longest_cycles_through(
    g: &Graph,
    r: &RequiredSet,
    budget: &mut Budget,
) -> Result<Vec<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let mut col = AllBest {
        len: 3,
        found: BTreeSet::new(),
        closed: true,
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col.found.into_iter().map(CycleOrPath::cycle).collect())
}

/// Every cycle through `r`, ordered by length then canonical form.
pub fn cycles_through(
    g: &Graph,
    r: &RequiredSet,
    budget: &mut Budget,
) -> Result<Vec<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let mut col = Every {
        found: BTreeSet::new(),
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col
        .found
        .into_iter()
        .map(|(_, vs)| CycleOrPath::cycle(vs))
        .collect())
}

/// The first cycle through `r` with exactly `length` edges that `accept`
/// approves, in search order.
pub fn find_cycle_through<F: FnMut(&CycleOrPath) -> bool>(
    g: &Graph,
    r: &RequiredSet,
    length: usize,
    accept: F,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    if length < 3 || length > p.n {
        return Ok(None);
    }
    let mut col = Exact {
        order: length,
        closed: true,
        accept,
        hit: None,
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col.hit.map(|c| c.canonical()))
}

/// A chordless cycle through `r` with exactly `length` edges.
pub fn find_chordless_cycle_through(
    g: &Graph,
    r: &RequiredSet,
    length: usize,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    if length < 3 || length > p.n {
        return Ok(None);
    }
    let mut col = Induced {
        order: length,
        hit: None,
    };
    search_cycles(&p, r, budget, &mut col)?;
    Ok(col.hit.map(|vs| CycleOrPath::cycle(vs).canonical()))
}

/// A longest `(x, y)`-path through `r`, directed from `x` to `y`.
pub fn longest_path_through(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    r: &RequiredSet,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let mut col = Best {
        best: None,
        min: 2,
        stop_at: p.n,
    };
    search_paths(&p, x, y, budget, &mut col)?;
    Ok(col.best.map(CycleOrPath::path))
}

/// All longest `(x, y)`-paths through `r`, each directed from `x` to `y`.
pub fn enumerate_longest_paths_through(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    r: &RequiredSet,
    budget: &mut Budget,
) -> Result<Vec<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    let mut col = AllBest {
        len: 2,
        found: BTreeSet::new(),
        closed: false,
    };
    search_paths(&p, x, y, budget, &mut col)?;
    Ok(col.found.into_iter().map(CycleOrPath::path).collect())
}

/// The first `(x, y)`-path through `r` with exactly `length` edges that
/// `accept` approves.
pub fn find_path_through<F: FnMut(&CycleOrPath) -> bool>(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    r: &RequiredSet,
    length: usize,
    accept: F,
    budget: &mut Budget,
) -> Result<Option<CycleOrPath>, SearchError> {
    let p = Problem::new(g, r)?;
    if length == 0 || length >= p.n {
        return Ok(None);
    }
    let mut col = Exact {
        order: length + 1,
        closed: false,
        accept,
        hit: None,
    };
    search_paths(&p, x, y, budget, &mut col)?;
    Ok(col.hit)
}
