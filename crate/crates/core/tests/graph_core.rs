mod support;

use std::io::Read;

use flate2::read::GzDecoder;
use longchord::graph6::{encode, parse, Graph6Error};
use longchord::{Edge, Graph, Image, VertexMap};
use proptest::prelude::*;
use support::corpus_path;

fn reference_lines() -> Vec<String> {
    let mut text = String::new();
    GzDecoder::new(std::fs::File::open(corpus_path("graph6_reference.g6.gz")).unwrap())
        .read_to_string(&mut text)
        .unwrap();
    text.lines().map(str::to_string).collect()
}

#[test]
fn reference_corpus_round_trips_byte_for_byte() {
    let lines = reference_lines();
    assert_eq!(lines.len(), 10_000);
    let mut large = 0;
    for line in &lines {
        let g = parse(line).unwrap();
        assert_eq!(&encode(&g).unwrap(), line);
        large += (g.n() > 62) as usize;
    }
    // The long size prefix is exercised too.
    assert!(large > 500);
}

#[test]
fn malformed_lines() {
    assert_eq!(parse(""), Err(Graph6Error::Empty));
    assert!(matches!(parse("C~~"), Err(Graph6Error::Trailing { .. })));
    assert!(matches!(parse("D"), Err(Graph6Error::Truncated { .. })));
    assert!(matches!(parse(":Fa@x^"), Err(Graph6Error::Unsupported { .. })));
    assert!(matches!(parse("C\u{7f}"), Err(Graph6Error::BadByte { column: 1, .. })));
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..40).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn encode_then_parse_is_identity(g in arb_graph()) {
        let text = encode(&g).unwrap();
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric(g in arb_graph()) {
        let mut degree_sum = 0;
        for v in 0..g.n() {
            let nb = g.neighbors(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(nb.iter().all(|&w| w != v && g.neighbors(w).contains(&v)));
            degree_sum += nb.len();
        }
        prop_assert_eq!(degree_sum, 2 * g.m());
        prop_assert_eq!(g.edges().count(), g.m());
    }

    #[test]
    fn deletion_maps_compose(g in arb_graph(), a: usize, b: usize) {
        prop_assume!(g.n() >= 3);
        let (x, y) = (a % g.n(), b % (g.n() - 1));
        let (g1, m1) = g.delete_vertex(x).unwrap();
        let (g2, m2) = g1.delete_vertex(y).unwrap();
        let both = m1.then(&m2);
        prop_assert_eq!(both.source_n(), g.n());
        prop_assert_eq!(both.target_n(), g2.n());
        prop_assert_eq!(both.image(x), Image::Gone);
        for e in g.edges() {
            if let (Some(u), Some(v)) = (both.vertex(e.u), both.vertex(e.v)) {
                prop_assert!(g2.contains(Edge::new(u, v)));
            }
        }
        for t in 0..g2.n() {
            prop_assert_eq!(both.preimage(t).len(), 1);
        }
        let id = VertexMap::identity(g.n());
        prop_assert_eq!(id.then(&both), both);
    }
}
