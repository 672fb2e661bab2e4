//! End-to-end checks against brute-force oracles written from scratch here.

use homcount::classes::GraphClass;
use homcount::counting::{CountMode, Counter};
use homcount::duplication::{wedge_collection, wedge_vertex_count};
use homcount::exponent::{degeneracy_gap_flaps, degeneracy_gap_graph, dup_exponent, hom_exponent};
use homcount::graph::is_isomorphic;
use homcount::lab::{brute_ex, verify_exponent, LabConfig};
use homcount::separations::IndependentCollection;
use homcount::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All `g.n()^h.n()` maps, filtered.
fn naive_maps(h: &Graph, g: &Graph, injective: bool) -> u64 {
    let (hn, gn) = (h.n(), g.n());
    let mut f = vec![0usize; hn];
    let mut total = 0;
    loop {
        let inj_ok = !injective || {
            let mut seen = vec![false; gn];
            f.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        if inj_ok && h.edges().all(|(u, v)| g.has_edge(f[u], f[v])) {
            total += 1;
        }
        let mut i = 0;
        while i < hn {
            f[i] += 1;
            if f[i] < gn {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == hn {
            return total;
        }
    }
}

fn naive_automorphisms(h: &Graph) -> u64 {
    let mut perm: Vec<usize> = (0..h.n()).collect();
    let mut count = 0;
    permute(&mut perm, 0, &mut |p| {
        if h.edges().all(|(u, v)| h.has_edge(p[u], p[v])) {
            count += 1;
        }
    });
    count
}

fn permute(p: &mut Vec<usize>, i: usize, visit: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        visit(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, visit);
        p.swap(i, j);
    }
}

fn random_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::build(n, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counter_matches_naive_enumeration(
        hn in 1usize..5, hm in any::<u64>(), gn in 1usize..6, gm in any::<u64>()
    ) {
        let h = random_graph(hn, hm);
        let g = random_graph(gn, gm);
        let c = Counter::new(u64::MAX);
        prop_assert_eq!(c.homomorphisms(&h, &g).unwrap(), naive_maps(&h, &g, false));
        let inj = naive_maps(&h, &g, true);
        prop_assert_eq!(c.injective(&h, &g).unwrap(), inj);
        let aut = naive_automorphisms(&h);
        prop_assert_eq!(c.automorphisms(&h).unwrap(), aut);
        prop_assert_eq!(c.subgraph_copies(&h, &g).unwrap(), inj / aut);
    }
}

#[test]
fn cycle_into_star_closed_form() {
    let c = Counter::new(u64::MAX);
    for leaves in 1..8u64 {
        let star = Graph::star(leaves as usize);
        assert_eq!(
            c.homomorphisms(&Graph::cycle(4), &star).unwrap(),
            2 * leaves * leaves
        );
    }
}

#[test]
fn path_wedge_is_a_star() {
    let p3 = Graph::path(3);
    let ends = IndependentCollection::from_flaps(&p3, &[vec![0], vec![2]]).unwrap();
    let c = Counter::new(u64::MAX);
    for k in 1..7 {
        let w = wedge_collection(&p3, &ends, k).unwrap();
        assert_eq!(w.graph.n(), wedge_vertex_count(3, 1, k));
        assert!(is_isomorphic(&w.graph, &Graph::star(2 * k)));
        let leaves = 2 * k as u64;
        assert_eq!(
            c.subgraph_copies(&p3, &w.graph).unwrap(),
            leaves * (leaves - 1) / 2
        );
    }
}

#[test]
fn exponent_ignores_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: [(&str, Graph); 4] = [
        ("forests", Graph::path(5)),
        ("forests", Graph::star(3)),
        ("outerplanar", Graph::cycle(5)),
        ("treewidth:2", Graph::path(4).with_apex()),
    ];
    for (class, h) in cases {
        let class: GraphClass = class.parse().unwrap();
        let base = dup_exponent(&class, &h, CountMode::Subgraph)
            .unwrap()
            .exponent;
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..h.n()).collect();
            perm.shuffle(&mut rng);
            let g = h.relabel(&perm);
            assert_eq!(
                dup_exponent(&class, &g, CountMode::Subgraph)
                    .unwrap()
                    .exponent,
                base,
                "{class}"
            );
        }
    }
}

#[test]
fn witness_wedges_stay_in_class_and_grow() {
    let c = Counter::new(u64::MAX);
    let cases: [(&str, Graph); 3] = [
        ("forests", Graph::path(4)),
        ("outerplanar", Graph::cycle(4)),
        ("planar", Graph::complete(4)),
    ];
    for (class, h) in cases {
        let class: GraphClass = class.parse().unwrap();
        let r = dup_exponent(&class, &h, CountMode::Induced).unwrap();
        assert_eq!(r.witness.len(), r.exponent);
        for k in 1..5 {
            let w = wedge_collection(&h, &r.witness, k).unwrap();
            assert!(class.contains(&w.graph).unwrap(), "{class} k={k}");
            let copies = c.induced_copies(&h, &w.graph).unwrap();
            assert!(copies >= (k as u64).pow(r.exponent as u32));
        }
    }
}

#[test]
fn hom_mode_dominates_subgraph_mode() {
    let forests = GraphClass::forests();
    let outer: GraphClass = "outerplanar".parse().unwrap();
    for h in [
        Graph::path(4),
        Graph::star(3),
        Graph::path(2).disjoint_union(&Graph::path(2)),
    ] {
        let s = dup_exponent(&forests, &h, CountMode::Subgraph)
            .unwrap()
            .exponent;
        assert!(hom_exponent(&forests, &h).unwrap().exponent >= s);
    }
    for h in [Graph::cycle(4), Graph::cycle(5)] {
        let s = dup_exponent(&outer, &h, CountMode::Subgraph)
            .unwrap()
            .exponent;
        assert!(hom_exponent(&outer, &h).unwrap().exponent >= s);
    }
}

#[test]
fn pinned_exhaustive_values() {
    let text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/ex_p3_outerplanar.csv"),
    )
    .unwrap();
    let outer: GraphClass = "outerplanar".parse().unwrap();
    let p3 = Graph::path(3);
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let (n, ex) = line.split_once(',').unwrap();
        let (n, ex): (usize, u64) = (n.parse().unwrap(), ex.parse().unwrap());
        assert_eq!(
            brute_ex(&p3, &outer, n, CountMode::Subgraph).unwrap(),
            ex,
            "n={n}"
        );
    }
}

#[test]
fn degenerate_counterexample_verdict() {
    let h = degeneracy_gap_graph(2, 1).unwrap();
    let class: GraphClass = "degenerate:2".parse().unwrap();
    let cfg = LabConfig::from_toml("n_range = [1, 6]\n").unwrap();
    let r = verify_exponent(&h, &class, CountMode::Subgraph, &cfg).unwrap();
    assert_eq!(r.predicted, 1);
    assert_eq!(h.alpha_d(2), 1);
    // The larger flap collection does not survive duplication.
    let flaps = IndependentCollection::from_flaps(&h, &degeneracy_gap_flaps(2, 1)).unwrap();
    assert_eq!(flaps.len(), 2);
    let w = wedge_collection(&h, &flaps, 2).unwrap();
    assert!(!class.contains(&w.graph).unwrap());
}
