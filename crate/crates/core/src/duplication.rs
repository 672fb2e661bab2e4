//! The wedge `H ∧_k Z`: `k` disjoint copies of `H` with each `z ∈ Z`
//! identified across copies.
//!
//! Numbering: the shared vertices come first in `H` order, then copy 0, copy
//! 1, ... of the remaining vertices, each in `H` order. The wedge at `k` is
//! therefore the subgraph of the wedge at `k + 1` induced by its first
//! `k(|V(H)| − |Z|) + |Z|` vertices.

use crate::counting::Counter;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::separations::IndependentCollection;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeResult {
    pub graph: Graph,
    /// `copies[i][v]`: the image of `v` in copy `i` (shared vertices included).
    pub copies: Vec<Vec<usize>>,
    /// `(z, image)` for each shared vertex.
    pub shared_map: Vec<(usize, usize)>,
}

impl WedgeResult {
    pub fn k(&self) -> usize {
        self.copies.len()
    }

    /// Map from this wedge's vertices into the wedge with one more copy.
    pub fn embedding_into_next(&self) -> Vec<usize> {
        (0..self.graph.n()).collect()
    }
}

pub fn wedge_vertex_count(h: usize, z: usize, k: usize) -> usize {
    k * (h - z) + z
}

pub fn wedge_set(h: &Graph, z: &VertexSet, k: usize) -> Result<WedgeResult> {
    if k == 0 {
        return Err(Error::Invalid("wedge needs k >= 1".into()));
    }
    let n = h.n();
    if z.universe() != n {
        return Err(Error::Invalid(format!(
            "shared set lives on {} vertices, pattern has {n}",
            z.universe()
        )));
    }
    let shared: Vec<usize> = z.to_vec();
    let rest: Vec<usize> = (0..n).filter(|&v| !z.contains(v)).collect();
    let (s, r) = (shared.len(), rest.len());
    let mut base = vec![0usize; n];
    for (i, &v) in shared.iter().enumerate() {
        base[v] = i;
    }
    let copies: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let mut map = base.clone();
            for (j, &v) in rest.iter().enumerate() {
                map[v] = s + c * r + j;
            }
            map
        })
        .collect();
    let mut edges = Vec::with_capacity(k * h.m());
    for map in &copies {
        edges.extend(h.edges().map(|(u, v)| (map[u], map[v])));
    }
    let graph = Graph::build(wedge_vertex_count(n, s, k), &edges)?;
    let shared_map = shared.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Ok(WedgeResult {
        graph,
        copies,
        shared_map,
    })
}

/// `H ∧_k (∩ B)` over the members `(A, B)` of `c`.
pub fn wedge_collection(h: &Graph, c: &IndependentCollection, k: usize) -> Result<WedgeResult> {
    wedge_set(h, &c.shared_set(), k)
}

/// Whether the wedge holds at least `k^|C|` induced copies of `H`.
pub fn verify_lower_bound(
    h: &Graph,
    c: &IndependentCollection,
    k: usize,
    counter: &Counter,
) -> Result<bool> {
    let w = wedge_collection(h, c, k)?;
    let copies = counter.induced_copies(h, &w.graph)? as u128;
    Ok(copies >= (k as u128).pow(c.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_induced_copies;
    use crate::graph::is_isomorphic;
    use crate::separations::enumerate_essential_collections;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p3 = Graph::path(3);
        let w = wedge_set(&p3, &VertexSet::new(3), 1).unwrap();
        assert!(is_isomorphic(&w.graph, &p3));

        let k2 = Graph::complete(2);
        let w = wedge_set(&k2, &VertexSet::from_iter(2, [0]), 5).unwrap();
        assert!(is_isomorphic(&w.graph, &Graph::star(5)));

        let w = wedge_set(&p3, &VertexSet::from_iter(3, [1, 2]), 2).unwrap();
        assert_eq!(w.graph.n(), 4);
        assert_eq!(w.graph.degree(0), 3, "b sees both copies of a and c");

        let whole = IndependentCollection::from_flaps(&p3, &[vec![0, 1, 2]]).unwrap();
        let w = wedge_collection(&p3, &whole, 3).unwrap();
        assert!(is_isomorphic(
            &w.graph,
            &p3.disjoint_union(&p3).disjoint_union(&p3)
        ));

        let ends = IndependentCollection::from_flaps(&p3, &[vec![0], vec![2]]).unwrap();
        let w = wedge_collection(&p3, &ends, 3).unwrap();
        assert!(is_isomorphic(&w.graph, &Graph::star(6)));
        assert_eq!(
            wedge_collection(&p3, &ends, 1).unwrap().graph,
            p3.relabel(&[1, 0, 2])
        );
    }

    #[test]
    fn lower_bound_examples() {
        let c = Counter::default();
        let k2 = Graph::complete(2);
        let whole = IndependentCollection::from_flaps(&k2, &[vec![0, 1]]).unwrap();
        let w = wedge_collection(&k2, &whole, 4).unwrap();
        assert_eq!(count_induced_copies(&k2, &w.graph).unwrap(), 4);
        assert!(verify_lower_bound(&k2, &whole, 4, &c).unwrap());
        let p3 = Graph::path(3);
        let ends = IndependentCollection::from_flaps(&p3, &[vec![0], vec![2]]).unwrap();
        assert!(verify_lower_bound(&p3, &ends, 2, &c).unwrap());
        assert!(verify_lower_bound(&p3, &ends, 1, &c).unwrap());
    }

    fn arb_case() -> impl Strategy<Value = (Graph, usize, usize)> {
        (1usize..=5).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                any::<prop::sample::Index>(),
                1usize..=4,
            )
                .prop_map(move |(bits, pick, k)| {
                    let mut edges = Vec::new();
                    let mut i = 0;
                    for b in 1..n {
                        for a in 0..b {
                            if bits[i] {
                                edges.push((a, b));
                            }
                            i += 1;
                        }
                    }
                    (Graph::build(n, &edges).unwrap(), pick.index(usize::MAX), k)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn wedge_invariants((h, pick, k) in arb_case()) {
            let all = enumerate_essential_collections(&h, h.n()).unwrap();
            let c = &all[pick % all.len()];
            let z = c.shared_set();
            let w = wedge_collection(&h, c, k).unwrap();
            prop_assert_eq!(w.graph.n(), wedge_vertex_count(h.n(), z.len(), k));
            for map in &w.copies {
                // Each copy map is an induced embedding.
                for u in 0..h.n() {
                    for v in 0..u {
                        prop_assert_eq!(h.has_edge(u, v), w.graph.has_edge(map[u], map[v]));
                    }
                }
            }
            let next = wedge_collection(&h, c, k + 1).unwrap();
            let emb = w.embedding_into_next();
            prop_assert_eq!(next.graph.induced_subgraph(&emb), w.graph.clone());
            prop_assert!(verify_lower_bound(&h, c, k, &Counter::default()).unwrap());
        }
    }
}
