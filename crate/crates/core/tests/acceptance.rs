//! The acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if an asserted criterion fails. Pass a number to run only that
//! criterion, e.g. `cargo test --test acceptance -- 4`.

mod support;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use longchord::connectivity::vertex_connectivity;
use longchord::constructions::{matching_extension_search, parity_subgraph, triangle_3coloring, MatchingFrame, TriangleSystem};
use longchord::corpus::{read_lines, CorpusLine};
use longchord::cycles::longest_cycle_through;
use longchord::lollipop::{find_second_cycle, SecondCycleRoute};
use longchord::verify::{collect, run_lines, CheckId, Outcome, Report, RunConfig, Summary, Witness};
use longchord::{graph6, Budget, CycleOrPath, Edge, Graph, RequiredSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracles::{all_cycles, compare_lollipop};
use support::{corpus, corpus_path, frame_k2, second_cycle_instance};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Vertex count from the size prefix; small graphs only.
fn order_of(text: &str) -> usize {
    (text.as_bytes()[0] - 63) as usize
}

fn lines(name: &str, max_n: usize) -> Vec<CorpusLine> {
    read_lines(corpus_path(name))
        .unwrap()
        .into_iter()
        .filter(|l| order_of(&l.text) <= max_n)
        .collect()
}

struct Run {
    summary: Summary,
    /// Reports other than verified and hypothesis-not-met, up to 20.
    flagged: Vec<Report>,
    /// Graph-level hypothesis failures.
    excluded: usize,
}

fn run(check: CheckId, lines: &[CorpusLine], set: Option<&str>, mut each: impl FnMut(&Report)) -> Run {
    let mut cfg = RunConfig::new(check);
    if let Some(s) = set {
        cfg.set = longchord::verify::parse_set_spec(s).unwrap();
    }
    cfg.jobs = jobs();
    let mut flagged = Vec::new();
    let mut excluded = 0;
    let summary = run_lines(lines, &cfg, |r| {
        if r.outcome == Outcome::HypothesisNotMet && r.required.is_none() {
            excluded += 1;
        } else if !matches!(r.outcome, Outcome::Verified | Outcome::HypothesisNotMet) && flagged.len() < 20 {
            flagged.push(r.clone());
        }
        each(r);
        Ok(())
    })
    .unwrap();
    Run {
        summary,
        flagged,
        excluded,
    }
}

impl Run {
    fn clean(&self) -> bool {
        let s = &self.summary;
        s.count(Outcome::Verified) > 0
            && s.count(Outcome::Counterexample) == 0
            && s.count(Outcome::FalsificationEvent) == 0
            && s.count(Outcome::InconclusiveBudget) == 0
            && s.count(Outcome::InputError) == 0
    }

    fn describe(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "{} graphs ({} outside the hypotheses), {} verified, {} counterexamples, {} inconclusive, {} falsification events",
            s.graphs,
            self.excluded,
            s.count(Outcome::Verified),
            s.count(Outcome::Counterexample),
            s.count(Outcome::InconclusiveBudget),
            s.count(Outcome::FalsificationEvent)
        );
        if let Some(r) = self.flagged.first() {
            out.push_str(&format!("; first flagged {} instance {}", r.graph_id, r.instance));
        }
        out
    }
}

fn c1() -> Verdict {
    let r = run(CheckId::C1_8, &lines("cubic_bicon_4-14.g6.gz", 14), None, |_| {});
    verdict(r.clean() && r.excluded == 0, r.describe())
}

fn c2() -> Verdict {
    let r = run(CheckId::T1_7, &lines("cubic_bicon_4-14.g6.gz", 12), None, |_| {});
    verdict(r.clean() && r.excluded == 0, r.describe())
}

fn c3() -> Verdict {
    let r = run(CheckId::T4_1, &lines("d4_bicon_5-10.g6.gz", 10), None, |_| {});
    verdict(r.clean(), r.describe())
}

fn c4() -> Verdict {
    let ls = lines("planar3c_d4_6-12.g6.gz", 12);
    let pairs = run(CheckId::T5_1, &ls, Some("all-edge-vertex-pairs"), |_| {});
    let triples = run(CheckId::T5_1, &ls, Some("all-vertex-triples"), |_| {});
    verdict(
        pairs.clean() && triples.clean() && pairs.excluded == 0,
        format!("pairs: {}; triples: {}", pairs.describe(), triples.describe()),
    )
}

fn c5() -> Verdict {
    let mut routes = BTreeMap::new();
    let mut falsified = 0;
    let mut invalid = Vec::new();
    for seed in 0..200 {
        let (g, c, (a, b)) = second_cycle_instance(14, seed);
        let c = CycleOrPath::cycle(c);
        let anchor = Edge::new(a, b);
        match find_second_cycle(&g, &c, anchor, &mut Budget::unlimited()) {
            Ok(out) => {
                let vs = out.cycle.vertices();
                let closed = (0..vs.len()).all(|i| g.has_edge(vs[i], vs[(i + 1) % vs.len()]));
                let simple = vs.iter().collect::<std::collections::BTreeSet<_>>().len() == vs.len();
                let odd = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).all(|v| vs.contains(&v));
                let ok = closed && simple && vs.len() >= 3 && odd && out.cycle.contains_edge(anchor) && out.cycle.canonical() != c.canonical();
                if !ok {
                    invalid.push(seed);
                }
                let key = match out.route {
                    SecondCycleRoute::Detour(_) => "detour",
                    SecondCycleRoute::Walk { .. } => "walk",
                };
                *routes.entry(key).or_insert(0) += 1;
            }
            Err(longchord::lollipop::LollipopError::Falsified(_)) => falsified += 1,
            Err(_) => invalid.push(seed),
        }
    }
    verdict(
        falsified == 0 && invalid.is_empty(),
        format!("200 instances, routes {routes:?}, falsification counter {falsified}, invalid {invalid:?}"),
    )
}

fn c6() -> Verdict {
    let t = compare_lollipop(8);
    verdict(
        t.instances > 0,
        format!(
            "{} anchored instances, {} paths; adjacency identical, handshake even everywhere; {} paths with a one-directional move, formula exact on {}",
            t.instances, t.paths, t.asymmetric, t.formula_exact
        ),
    )
}

fn c7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut samples, mut good) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(2..=20);
        let mut g = Graph::new(n);
        for v in 1..n {
            let u = rng.gen_range(0..v);
            g.add_edge(u, v);
        }
        for _ in 0..rng.gen_range(0..2 * n) {
            g.add_edge(rng.gen_range(0..n), rng.gen_range(0..n));
        }
        for size in (0..=6).step_by(2).filter(|&s| s <= n) {
            for _ in 0..3 {
                let mut s: Vec<usize> = (0..n).collect();
                s.shuffle(&mut rng);
                s.truncate(size);
                samples += 1;
                let Ok(h) = parity_subgraph(&g, &s) else { continue };
                let mut deg = vec![0; n];
                for e in &h {
                    deg[e.u] += 1;
                    deg[e.v] += 1;
                }
                if h.iter().all(|&e| g.contains(e)) && (0..n).all(|v| (deg[v] % 2 == 1) == s.contains(&v)) {
                    good += 1;
                }
            }
        }
    }
    verdict(good == samples, format!("{good}/{samples} samples over 500 graphs"))
}

fn c8() -> Verdict {
    let (mut made, mut colored) = (0, 0);
    for i in 0..100u64 {
        let p = 2 + (i % 5) as usize;
        let Some(t) = TriangleSystem::random(p, i) else { continue };
        made += 1;
        if let Ok(c) = triangle_3coloring(&t) {
            if c.iter().all(|&x| x < 3) && t.host().edges().all(|e| c[e.u] != c[e.v]) {
                colored += 1;
            }
        }
    }
    verdict(made == 100 && colored == made, format!("{colored}/{made} systems on 6 to 18 vertices properly 3-colored"))
}

fn c9() -> Verdict {
    let mut frames = vec![MatchingFrame::k4(), frame_k2()];
    for k in 1..=3 {
        frames.extend(MatchingFrame::family(k));
    }
    let mut extended = 0;
    for f in &frames {
        if let Ok(c) = matching_extension_search(f, &mut Budget::unlimited()) {
            let vs = c.vertices();
            let closed = (0..vs.len()).all(|i| f.host().has_edge(vs[i], vs[(i + 1) % vs.len()]));
            if closed && c.len() > 3 * f.k() && f.matching_m().iter().all(|&e| c.contains_edge(e)) {
                extended += 1;
            }
        }
    }
    verdict(extended == frames.len(), format!("{extended}/{} frames with k <= 3 extended", frames.len()))
}

fn c10() -> Verdict {
    let mut pairs = 0;
    let r = run(CheckId::Tutte, &lines("planar_bicon_3-10.g6.gz", 10), None, |rep| {
        if let Some(Witness::Tutte { pairs: p, .. }) = rep.witness {
            pairs += p;
        }
    });
    verdict(r.clean() && r.excluded == 0, format!("{}; {pairs} (e, e') pairs", r.describe()))
}

fn c11() -> Verdict {
    let r = run(CheckId::T6_1, &lines("bicon_3-9.g6.gz", 9), Some("all-forests:2"), |_| {});
    verdict(r.clean(), r.describe())
}

/// Connectivity of a counterexample's graph.
fn kappa_of(r: &Report) -> usize {
    let text = r.graph_id.split_once(':').unwrap().1;
    vertex_connectivity(&graph6::parse(text).unwrap())
}

fn c12() -> (Verdict, Option<bool>) {
    let ls = lines("bicon_3-9.g6.gz", 9);
    let c11 = run(CheckId::C1_1, &ls, None, |_| {});
    let c16 = run(CheckId::C1_6, &ls, None, |_| {});
    let mut by_kappa: BTreeMap<usize, usize> = BTreeMap::new();
    let mut smallest_k2: Option<String> = None;
    let c62 = run(CheckId::C6_2, &ls, Some("all-forests:2"), |r| {
        if r.outcome == Outcome::Counterexample {
            let k = kappa_of(r);
            *by_kappa.entry(k).or_default() += 1;
            if k == 2 && smallest_k2.is_none() {
                smallest_k2 = Some(r.graph_id.clone());
            }
        }
    });
    let no_budget = [&c11, &c16, &c62].iter().all(|r| r.summary.count(Outcome::InconclusiveBudget) == 0);
    let above_two: usize = by_kappa.range(3..).map(|(_, c)| c).sum();
    let pass = c11.clean() && c16.clean() && c62.clean();
    // The conjecture fails for 2-connected graphs with F empty, so only the
    // k >= 3 part and the other two hunts are asserted.
    let asserted = c11.clean() && c16.clean() && above_two == 0 && no_budget;
    let detail = format!(
        "C1.1: {}. C1.6: {}. C6.2: {}; counterexamples by connectivity {by_kappa:?}, first with k = 2 {}",
        c11.describe(),
        c16.describe(),
        c62.describe(),
        smallest_k2.unwrap_or_else(|| "none".into())
    );
    (verdict(pass, detail), Some(asserted))
}

fn c13() -> Verdict {
    let reference = lines("graph6_reference.g6.gz", usize::MAX);
    let exact = reference
        .iter()
        .filter(|l| graph6::parse(&l.text).and_then(|g| graph6::encode(&g)).is_ok_and(|t| t == l.text))
        .count();

    let mut mismatched = Vec::new();
    let small = corpus("all_1-8.g6.gz");
    for g in &small {
        let oracle = all_cycles(g).iter().map(Vec::len).max();
        let ours = longest_cycle_through(g, &RequiredSet::empty(), &mut Budget::unlimited())
            .unwrap()
            .map(|c| c.len());
        if oracle != ours {
            mismatched.push(graph6::encode(g).unwrap());
        }
    }

    let mut ls = lines("cubic_bicon_4-14.g6.gz", 12);
    ls.push(CorpusLine {
        line: ls.len() + 1,
        text: "not graph6".into(),
    });
    let hashes: Vec<(String, Vec<Report>)> = [1, 8]
        .into_iter()
        .map(|j| {
            let mut cfg = RunConfig::new(CheckId::C1_8);
            cfg.jobs = j;
            let (mut reports, s) = collect(&ls, &cfg);
            for r in &mut reports {
                r.stats.wall_us = 0;
            }
            (s.hash, reports)
        })
        .collect();
    let same = hashes[0] == hashes[1];
    verdict(
        exact == reference.len() && reference.len() == 10_000 && mismatched.is_empty() && same,
        format!(
            "graph6 {exact}/{} lines bit-exact; circumference agrees with the permutation oracle on {}/{} graphs; hash jobs=1 {} jobs=8 {}",
            reference.len(),
            small.len() - mismatched.len(),
            small.len(),
            &hashes[0].0[..16],
            &hashes[1].0[..16]
        ),
    )
}

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let criteria: Vec<(usize, &str, fn() -> (Verdict, Option<bool>))> = vec![
        (1, "edge plus vertex, cubic n <= 14", || (c1(), None)),
        (2, "full-neighbour vertex on longest paths, cubic n <= 12", || (c2(), None)),
        (3, "some chorded longest cycle through an edge, d >= 4 n <= 10", || (c3(), None)),
        (4, "planar d >= 4 sets of three, n <= 12", || (c4(), None)),
        (5, "second cycle through the anchor, 200 instances", || (c5(), None)),
        (6, "lollipop moves against the explicit graph, n <= 8", || (c6(), None)),
        (7, "parity subgraphs, 500 graphs", || (c7(), None)),
        (8, "triangle systems are 3-colorable, 100 systems", || (c8(), None)),
        (9, "matching frames extend, k <= 3", || (c9(), None)),
        (10, "bridge-condition cycles, planar 2-connected n <= 10", || (c10(), None)),
        (11, "cycle length bound through linear forests, n <= 9", || (c11(), None)),
        (12, "conjecture hunts, n <= 9", c12),
        (13, "graph6, circumference oracle, determinism", || (c13(), None)),
    ];
    let mut failed_asserted = Vec::new();
    for (n, name, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let started = Instant::now();
        // `gate` overrides the verdict for criteria that are only partly asserted.
        let (v, gate) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(x) => x,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (verdict(false, format!("panicked: {msg}")), None)
            }
        };
        let status = if v.pass { "PASS" } else { "FAIL" };
        let ok = gate.unwrap_or(v.pass);
        let note = if !v.pass && ok { " [known unattainable, not asserted]" } else { "" };
        println!(
            "criterion {n:>2} {status}{note}: {name}: {} ({:.1}s)",
            v.detail,
            started.elapsed().as_secs_f64()
        );
        if !ok {
            failed_asserted.push(n);
        }
    }
    if failed_asserted.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("asserted criteria failed: {failed_asserted:?}");
        ExitCode::FAILURE
    }
}
