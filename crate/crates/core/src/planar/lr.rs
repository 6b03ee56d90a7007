//! Left-right planarity test with embedding, after Brandes' formulation and
//! following the structure of the networkx implementation.

use crate::graph::{Graph, Vertex};

type Dart = usize;

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Interval {
    low: Option<Dart>,
    high: Option<Dart>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl Pair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    g: &'a Graph,
    off: Vec<usize>,
    tail: Vec<Vertex>,
    head: Vec<Vertex>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<Dart>>,
    oriented: Vec<bool>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    ordered: Vec<Vec<Vertex>>,
    refs: Vec<Option<Dart>>,
    side: Vec<i8>,
    lowpt_edge: Vec<Option<Dart>>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<Pair>,
    next_id: usize,
    left_ref: Vec<Option<Vertex>>,
    right_ref: Vec<Option<Vertex>>,
    rot: Vec<Vec<Vertex>>,
}

impl<'a> Lr<'a> {
    fn new(g: &'a Graph) -> Lr<'a> {
        let n = g.n();
        let mut off = Vec::with_capacity(n + 1);
        let mut tail = Vec::new();
        let mut head = Vec::new();
        for v in 0..n {
            off.push(tail.len());
            for &w in g.neighbors(v) {
                tail.push(v);
                head.push(w);
            }
        }
        off.push(tail.len());
        let d = tail.len();
        Lr {
            g,
            off,
            tail,
            head,
            height: vec![None; n],
            parent_edge: vec![None; n],
            oriented: vec![false; d],
            lowpt: vec![0; d],
            lowpt2: vec![0; d],
            nesting: vec![0; d],
            ordered: vec![Vec::new(); n],
            refs: vec![None; d],
            side: vec![1; d],
            lowpt_edge: vec![None; d],
            stack_bottom: vec![None; d],
            stack: Vec::new(),
            next_id: 0,
            left_ref: vec![None; n],
            right_ref: vec![None; n],
            rot: vec![Vec::new(); n],
        }
    }

    fn dart(&self, v: Vertex, w: Vertex) -> Dart {
        self.off[v] + self.g.neighbors(v).binary_search(&w).expect("dart of an edge")
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> Pair {
        self.next_id += 1;
        Pair { id: self.next_id, left, right }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn conflicting(&self, i: &Interval, b: Dart) -> bool {
        !i.is_empty() && i.high.is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &Pair) -> Option<usize> {
        let l = p.left.low.map(|d| self.lowpt[d]);
        let r = p.right.low.map(|d| self.lowpt[d]);
        match (p.left.is_empty(), p.right.is_empty()) {
            (true, _) => r,
            (_, true) => l,
            _ => match (l, r) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }

    fn orient(&mut self, v: Vertex) {
        let e = self.parent_edge[v];
        for i in 0..self.g.degree(v) {
            let w = self.g.neighbors(v)[i];
            let vw = self.off[v] + i;
            if self.oriented[vw] || self.oriented[self.dart(w, v)] {
                continue;
            }
            self.oriented[vw] = true;
            let hv = self.height[v].unwrap();
            self.lowpt[vw] = hv;
            self.lowpt2[vw] = hv;
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }
            self.nesting[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < hv {
                self.nesting[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn sort_out_edges(&mut self) {
        for v in 0..self.g.n() {
            let mut out: Vec<Vertex> = self
                .g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| self.oriented[self.dart(v, w)])
                .collect();
            out.sort_by_key(|&w| self.nesting[self.dart(v, w)]);
            self.ordered[v] = out;
        }
    }

    fn test(&mut self, v: Vertex) -> bool {
        let e = self.parent_edge[v];
        let ordered = self.ordered[v].clone();
        for (k, &w) in ordered.iter().enumerate() {
            let ei = self.dart(v, w);
            self.stack_bottom[ei] = self.top_id();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                let p = self.new_pair(Interval::default(), Interval { low: Some(ei), high: Some(ei) });
                self.stack.push(p);
            }
            if self.lowpt[ei] < self.height[v].unwrap() {
                let e = e.expect("a return edge below the root");
                if k == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: Dart, e: Dart) -> bool {
        let mut p = self.new_pair(Interval::default(), Interval::default());
        loop {
            let Some(mut q) = self.stack.pop() else { break };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let ql = q.right.low.expect("non-empty right interval");
            if self.lowpt[ql] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(l) = p.right.low {
                    self.refs[l] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[ql] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.refs[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(l) = p.left.low {
                self.refs[l] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: Dart) {
        let u = self.tail[e];
        let hu = self.height[u];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.head[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.head[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.refs[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu.unwrap() {
            let top = self.stack.last().expect("return edges leave a pair on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: Dart) -> i8 {
        let mut chain = vec![e];
        while let Some(r) = self.refs[*chain.last().unwrap()] {
            chain.push(r);
        }
        // Resolve from the far end so each edge multiplies by an already
        // final sign.
        for k in (0..chain.len() - 1).rev() {
            let d = chain[k];
            let r = chain[k + 1];
            self.side[d] *= self.side[r];
            self.refs[d] = None;
        }
        self.side[e]
    }

    fn insert_after(&mut self, v: Vertex, w: Vertex, reference: Option<Vertex>) {
        match reference.and_then(|r| self.rot[v].iter().position(|&x| x == r)) {
            Some(i) => self.rot[v].insert(i + 1, w),
            None => self.rot[v].push(w),
        }
    }

    fn insert_before(&mut self, v: Vertex, w: Vertex, reference: Option<Vertex>) {
        match reference.and_then(|r| self.rot[v].iter().position(|&x| x == r)) {
            Some(i) => self.rot[v].insert(i, w),
            None => self.rot[v].push(w),
        }
    }

    fn embed(&mut self, v: Vertex) {
        let ordered = self.ordered[v].clone();
        for w in ordered {
            let ei = self.dart(v, w);
            if self.parent_edge[w] == Some(ei) {
                self.rot[w].insert(0, v);
                self.left_ref[v] = Some(w);
                self.right_ref[v] = Some(w);
                self.embed(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.insert_after(w, v, r);
            } else {
                let l = self.left_ref[w];
                self.insert_before(w, v, l);
                self.left_ref[w] = Some(v);
            }
        }
    }
}

/// Clockwise rotation at each vertex, or `None` if `g` is not planar.
pub(super) fn rotation_system(g: &Graph) -> Option<Vec<Vec<Vertex>>> {
    let n = g.n();
    if n > 2 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut lr = Lr::new(g);
    let mut roots = Vec::new();
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            roots.push(v);
            lr.orient(v);
        }
    }
    lr.sort_out_edges();
    for &r in &roots {
        if !lr.test(r) {
            return None;
        }
    }
    for d in 0..lr.tail.len() {
        if lr.oriented[d] {
            let s = lr.sign(d) as i64;
            lr.nesting[d] *= s;
        }
    }
    lr.sort_out_edges();
    for v in 0..n {
        lr.rot[v] = lr.ordered[v].clone();
    }
    for &r in &roots {
        lr.embed(r);
    }
    Some(lr.rot)
}
