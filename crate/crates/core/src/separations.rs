//! Separations, independent collections, essentialization and torsos.
//!
//! For an essential member `(A, B)` the separation is determined by its flap
//! `A − B`: `A = N[A − B]` and `B = V − (A − B)`. Essential collections are
//! therefore stored and enumerated as families of flaps, and two such members
//! are independent exactly when their flaps are disjoint and non-adjacent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, to_graph6, Graph, VertexSet};

/// Largest pattern for which flaps are enumerated over all vertex subsets.
pub const MAX_ENUM_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    /// `(N[flap], V − flap)`.
    pub fn from_flap(h: &Graph, flap: &VertexSet) -> Self {
        Separation {
            a: h.closed_neighborhood(flap),
            b: h.vertex_set().difference(flap),
        }
    }

    pub fn order(&self) -> usize {
        self.a.intersection_count(&self.b)
    }

    pub fn flap(&self) -> VertexSet {
        self.a.difference(&self.b)
    }

    pub fn boundary(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    /// `A ∪ B = V(h)` and no edge joins `A − B` to `B − A`.
    pub fn is_separation_of(&self, h: &Graph) -> bool {
        let n = h.n();
        if self.a.universe() != n || self.b.universe() != n {
            return false;
        }
        if self.a.union(&self.b).len() != n {
            return false;
        }
        let only_b = self.b.difference(&self.a);
        self.flap()
            .iter()
            .all(|v| h.neighbor_set(v).is_disjoint(&only_b))
    }
}

/// A family of separations of one host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentCollection {
    host: Graph,
    members: Vec<Separation>,
}

impl IndependentCollection {
    /// Wraps members without checking them; see [`validate`](Self::validate).
    pub fn new(host: Graph, members: Vec<Separation>) -> Self {
        IndependentCollection { host, members }
    }

    /// Builds `(N[C], V − C)` for each flap `C` and validates the result.
    pub fn from_flaps(host: &Graph, flaps: &[Vec<usize>]) -> Result<Self> {
        let n = host.n();
        let mut members = Vec::with_capacity(flaps.len());
        for flap in flaps {
            if let Some(&v) = flap.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let set = VertexSet::from_iter(n, flap.iter().copied());
            members.push(Separation::from_flap(host, &set));
        }
        let c = IndependentCollection::new(host.clone(), members);
        match c.validation_error() {
            None => Ok(c),
            Some(msg) => Err(Error::InvalidCollection(msg)),
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn members(&self) -> &[Separation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.members
            .iter()
            .map(Separation::order)
            .max()
            .unwrap_or(0)
    }

    pub fn flaps(&self) -> Vec<VertexSet> {
        self.members.iter().map(Separation::flap).collect()
    }

    /// Flaps as sorted vertex lists, sorted; equal for collections that differ
    /// only in member order.
    pub fn canonical_flaps(&self) -> Vec<Vec<usize>> {
        let mut f: Vec<Vec<usize>> = self.flaps().iter().map(VertexSet::to_vec).collect();
        f.sort();
        f
    }

    /// `∩ B` over all members (all of `V` for the empty collection).
    pub fn shared_set(&self) -> VertexSet {
        let mut z = self.host.vertex_set();
        for s in &self.members {
            z.intersect_with(&s.b);
        }
        z
    }

    pub fn validate(&self) -> bool {
        self.validation_error().is_none()
    }

    /// The first violated condition, if any.
    pub fn validation_error(&self) -> Option<String> {
        for (i, s) in self.members.iter().enumerate() {
            if !s.is_separation_of(&self.host) {
                return Some(format!("member {i} is not a separation of the host"));
            }
            if s.flap().is_empty() {
                return Some(format!("member {i} has A − B empty"));
            }
        }
        for (i, s) in self.members.iter().enumerate() {
            for (j, t) in self.members.iter().enumerate() {
                if i != j && !(s.a.is_subset(&t.b) && t.a.is_subset(&s.b)) {
                    return Some(format!("members {i} and {j} are not independent"));
                }
            }
        }
        None
    }

    /// Every boundary vertex has a neighbour in the flap, and the flap is connected.
    pub fn is_essential(&self) -> bool {
        self.members.iter().all(|s| {
            let flap = s.flap();
            let attached = s
                .boundary()
                .iter()
                .all(|v| !self.host.neighbor_set(v).is_disjoint(&flap));
            attached && self.host.components_within(&flap).len() == 1
        })
    }

    /// Splits every flap into its components `Q` and replaces the member by
    /// `(N[Q], V − Q)`.
    pub fn essentialize(&self) -> IndependentCollection {
        let mut members = Vec::new();
        for s in &self.members {
            for q in self.host.components_within(&s.flap()) {
                members.push(Separation::from_flap(&self.host, &q));
            }
        }
        IndependentCollection::new(self.host.clone(), members)
    }

    /// `H[∩B]` with every `A ∩ B` completed to a clique.
    pub fn central_torso(&self) -> Torso {
        let z = self.shared_set();
        let boundaries: Vec<VertexSet> = self.members.iter().map(Separation::boundary).collect();
        Torso::build(&self.host, &z, &boundaries)
    }

    /// For each member `(X, Y)`, `H[X]` with `X ∩ Y` completed to a clique.
    pub fn peripheral_torsos(&self) -> Vec<Torso> {
        self.members
            .iter()
            .map(|s| Torso::build(&self.host, &s.a, &[s.boundary()]))
            .collect()
    }

    pub fn torsos(&self) -> Vec<Torso> {
        let mut all = vec![self.central_torso()];
        all.extend(self.peripheral_torsos());
        all
    }

    pub fn to_json(&self) -> CollectionJson {
        CollectionJson {
            host: to_graph6(&self.host),
            flaps: self.flaps().iter().map(VertexSet::to_vec).collect(),
        }
    }

    pub fn from_json(json: &CollectionJson) -> Result<Self> {
        let host = parse_graph6(&json.host)?;
        IndependentCollection::from_flaps(&host, &json.flaps)
    }
}

/// Serialized collection: the host as graph6 and each member by its flap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionJson {
    pub host: String,
    pub flaps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torso {
    pub graph: Graph,
    /// `vertices[i]` is the host vertex behind torso vertex `i`.
    pub vertices: Vec<usize>,
    /// Torso-labelled pairs lying inside some completed boundary.
    pub peripheral_edges: Vec<(usize, usize)>,
}

impl Torso {
    fn build(h: &Graph, within: &VertexSet, cliques: &[VertexSet]) -> Torso {
        let vertices = within.to_vec();
        let mut index = vec![usize::MAX; h.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut extra = Vec::new();
        for k in cliques {
            let ks: Vec<usize> = k.iter().map(|v| index[v]).collect();
            debug_assert!(ks.iter().all(|&i| i != usize::MAX));
            for (x, &i) in ks.iter().enumerate() {
                for &j in &ks[x + 1..] {
                    extra.push((i.min(j), i.max(j)));
                }
            }
        }
        extra.sort_unstable();
        extra.dedup();
        let graph = h.induced_subgraph(&vertices).with_edges(&extra);
        Torso {
            graph,
            vertices,
            peripheral_edges: extra,
        }
    }
}

/// Connected vertex sets `C` with `|N(C)| <= max_order`, in increasing
/// bitmask order.
pub fn enumerate_flaps(h: &Graph, max_order: usize) -> Result<Vec<VertexSet>> {
    let n = h.n();
    if n > MAX_ENUM_VERTICES {
        return Err(Error::TooLarge {
            what: "flap enumeration",
            max: MAX_ENUM_VERTICES,
            got: n,
        });
    }
    let nb: Vec<u64> = (0..n).map(|v| mask_of(h.neighbors(v))).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let mut boundary = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            boundary |= nb[v];
        }
        boundary &= !mask;
        if boundary.count_ones() as usize <= max_order && connected_mask(&nb, mask) {
            out.push(VertexSet::from_mask(n, mask));
        }
    }
    Ok(out)
}

fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

fn connected_mask(nb: &[u64], mask: u64) -> bool {
    let start = mask & mask.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nb[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

/// All non-empty families of pairwise disjoint, pairwise non-adjacent flaps of
/// order at most `max_order`, each once, as lists of flap indices into
/// `enumerate_flaps` in increasing order.
pub fn flap_families(h: &Graph, max_order: usize) -> Result<(Vec<VertexSet>, Vec<Vec<usize>>)> {
    let flaps = enumerate_flaps(h, max_order)?;
    let n = h.n();
    let nb: Vec<u64> = (0..n).map(|v| mask_of(h.neighbors(v))).collect();
    let masks: Vec<u64> = flaps.iter().map(VertexSet::to_mask).collect();
    // A later flap is compatible if it avoids the closed neighbourhood of the chosen ones.
    let closed: Vec<u64> = masks
        .iter()
        .map(|&m| {
            let mut c = m;
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                c |= nb[v];
            }
            c
        })
        .collect();
    let mut families = Vec::new();
    let mut stack = Vec::new();
    fn go(
        start: usize,
        blocked: u64,
        masks: &[u64],
        closed: &[u64],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in start..masks.len() {
            if masks[i] & blocked == 0 {
                stack.push(i);
                out.push(stack.clone());
                go(i + 1, blocked | closed[i], masks, closed, stack, out);
                stack.pop();
            }
        }
    }
    go(0, 0, &masks, &closed, &mut stack, &mut families);
    Ok((flaps, families))
}

/// Every essential independent collection of order at most `max_order`,
/// excluding the empty one.
pub fn enumerate_essential_collections(
    h: &Graph,
    max_order: usize,
) -> Result<Vec<IndependentCollection>> {
    let (flaps, families) = flap_families(h, max_order)?;
    let alpha = h.independence_number();
    Ok(families
        .into_iter()
        .map(|fam| {
            debug_assert!(fam.len() <= alpha);
            let members = fam
                .iter()
                .map(|&i| Separation::from_flap(h, &flaps[i]))
                .collect();
            IndependentCollection::new(h.clone(), members)
        })
        .collect())
}

/// Maximum size of an independent collection of order at most `d`.
pub fn flap_d(h: &Graph, d: usize) -> Result<usize> {
    let (_, families) = flap_families(h, d)?;
    Ok(families.iter().map(Vec::len).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::counterexample;
    use proptest::prelude::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    /// Brute-force oracle: all separations of `h` with non-empty A − B.
    fn all_separations(h: &Graph, max_order: usize) -> Vec<Separation> {
        let n = h.n();
        let mut out = Vec::new();
        // Each vertex is in A − B, B − A or A ∩ B.
        let mut code = vec![0u8; n];
        loop {
            let a = VertexSet::from_iter(n, (0..n).filter(|&v| code[v] != 1));
            let b = VertexSet::from_iter(n, (0..n).filter(|&v| code[v] != 0));
            let s = Separation::new(a, b);
            if s.is_separation_of(h) && !s.flap().is_empty() && s.order() <= max_order {
                out.push(s);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                code[i] += 1;
                if code[i] < 3 {
                    break;
                }
                code[i] = 0;
                i += 1;
            }
        }
    }

    /// Largest independent collection by exhaustive search over separations.
    fn brute_flap(h: &Graph, d: usize) -> usize {
        let seps = all_separations(h, d);
        fn go(seps: &[Separation], chosen: &mut Vec<usize>, start: usize) -> usize {
            let mut best = chosen.len();
            for i in start..seps.len() {
                let ok = chosen
                    .iter()
                    .all(|&j| seps[i].a.is_subset(&seps[j].b) && seps[j].a.is_subset(&seps[i].b));
                if ok {
                    chosen.push(i);
                    best = best.max(go(seps, chosen, i + 1));
                    chosen.pop();
                }
            }
            best
        }
        go(&seps, &mut Vec::new(), 0)
    }

    #[test]
    fn orders_and_validation() {
        let k1 = Graph::empty(1);
        let iso = Separation::from_flap(&k1, &set(1, &[0]));
        assert_eq!(iso.order(), 0);
        let whole = IndependentCollection::new(
            k1.clone(),
            vec![Separation::new(set(1, &[0]), set(1, &[]))],
        );
        assert!(whole.validate());
        let p3 = Graph::path(3);
        let c = IndependentCollection::new(
            p3.clone(),
            vec![
                Separation::new(set(3, &[0, 1]), set(3, &[1, 2])),
                Separation::new(set(3, &[1, 2]), set(3, &[0, 1])),
            ],
        );
        assert!(c.validate());
        assert!(c.is_essential());
        assert_eq!(c.max_order(), 1);
        let bad = IndependentCollection::new(
            p3.clone(),
            vec![Separation::new(set(3, &[0]), set(3, &[1, 2]))],
        );
        assert!(!bad.validate(), "edge 0-1 crosses");
    }

    #[test]
    fn essential_conditions() {
        let p3 = Graph::path(3);
        let one = IndependentCollection::from_flaps(&p3, &[vec![0]]).unwrap();
        assert!(one.is_essential());
        // Disconnected flap {0, 2} with boundary {1}.
        let split = IndependentCollection::new(
            p3.clone(),
            vec![Separation::new(set(3, &[0, 1, 2]), set(3, &[1]))],
        );
        assert!(split.validate());
        assert!(!split.is_essential());
        let ess = split.essentialize();
        assert_eq!(ess.len(), 2);
        assert!(ess.is_essential() && ess.validate());
        // Boundary vertex 2 has no neighbour in the flap {0}.
        let loose = IndependentCollection::new(
            p3.clone(),
            vec![Separation::new(set(3, &[0, 1, 2]), set(3, &[1, 2]))],
        );
        assert!(loose.validate());
        assert!(!loose.is_essential());
        assert_eq!(loose.essentialize().canonical_flaps(), vec![vec![0]]);
        let k4 = Graph::complete(4);
        let whole = IndependentCollection::from_flaps(&k4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(whole.essentialize(), whole);
    }

    #[test]
    fn enumeration_examples() {
        let k1 = Graph::empty(1);
        let all = enumerate_essential_collections(&k1, 0).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(
            all[0].members()[0],
            Separation::new(set(1, &[0]), set(1, &[]))
        );

        let p3 = Graph::path(3);
        let all = enumerate_essential_collections(&p3, 1).unwrap();
        assert_eq!(all.iter().map(|c| c.len()).max(), Some(2));
        assert_eq!(flap_d(&p3, 1).unwrap(), 2);

        let k3 = Graph::complete(3);
        assert_eq!(flap_d(&k3, 1).unwrap(), 1);
        assert_eq!(flap_d(&counterexample(), 2).unwrap(), 2);
        assert_eq!(counterexample().alpha_d(2), 1);
    }

    #[test]
    fn torsos() {
        let k3 = Graph::complete(3);
        let whole = IndependentCollection::from_flaps(&k3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(whole.central_torso().graph.n(), 0);
        let per = whole.peripheral_torsos();
        assert_eq!(per.len(), 1);
        assert_eq!(per[0].graph, k3);

        let p3 = Graph::path(3);
        let ends = IndependentCollection::from_flaps(&p3, &[vec![0], vec![2]]).unwrap();
        let central = ends.central_torso();
        assert_eq!(central.graph, Graph::empty(1));
        assert_eq!(central.vertices, vec![1]);
        for t in ends.peripheral_torsos() {
            assert_eq!(t.graph, Graph::complete(2));
        }

        let c4 = Graph::cycle(4);
        let c = IndependentCollection::from_flaps(&c4, &[vec![0]]).unwrap();
        let t = &c.peripheral_torsos()[0];
        assert_eq!(t.vertices, vec![0, 1, 3]);
        assert_eq!(t.graph, Graph::complete(3));
        assert_eq!(t.peripheral_edges, vec![(1, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let p3 = Graph::path(3);
        let c = IndependentCollection::from_flaps(&p3, &[vec![0], vec![2]]).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let back: CollectionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(IndependentCollection::from_json(&back).unwrap(), c);
        assert!(IndependentCollection::from_flaps(&p3, &[vec![0], vec![1]]).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(prop::bool::weighted(0.4), n * (n - 1) / 2).prop_map(
                move |bits| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[k] {
                                edges.push((i, j));
                            }
                            k += 1;
                        }
                    }
                    Graph::build(n, &edges).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn flap_d_matches_exhaustive_separations(h in arb_graph(5), d in 0usize..3) {
            prop_assert_eq!(flap_d(&h, d).unwrap(), brute_flap(&h, d));
        }

        #[test]
        fn enumerated_collections_are_sound(h in arb_graph(7), d in 0usize..3) {
            let alpha = h.independence_number();
            let mut seen = std::collections::HashSet::new();
            for c in enumerate_essential_collections(&h, d).unwrap() {
                prop_assert!(c.validate());
                prop_assert!(c.is_essential());
                prop_assert!(c.max_order() <= d);
                prop_assert!(c.len() <= alpha);
                prop_assert!(seen.insert(c.canonical_flaps()));
                // Torso vertex sets cover V and every edge lies in some torso.
                let torsos = c.torsos();
                let mut covered = VertexSet::new(h.n());
                for t in &torsos {
                    covered.union_with(&VertexSet::from_iter(h.n(), t.vertices.iter().copied()));
                }
                prop_assert_eq!(covered.len(), h.n());
                for (u, v) in h.edges() {
                    prop_assert!(torsos.iter().any(|t| t.vertices.contains(&u) && t.vertices.contains(&v)));
                }
            }
        }

        #[test]
        fn essentialize_properties(h in arb_graph(6), d in 0usize..3) {
            // Any family of separations from the exhaustive list that is independent.
            let seps = all_separations(&h, d);
            let mut chosen: Vec<Separation> = Vec::new();
            for s in seps {
                if chosen.iter().all(|t| s.a.is_subset(&t.b) && t.a.is_subset(&s.b)) {
                    chosen.push(s);
                }
            }
            let c = IndependentCollection::new(h.clone(), chosen);
            prop_assert!(c.validate());
            let e = c.essentialize();
            prop_assert!(e.validate() && e.is_essential());
            prop_assert!(e.len() >= c.len());
            prop_assert!(e.max_order() <= c.max_order());
            // The wedge only depends on the union of flaps, which essentialization keeps.
            prop_assert_eq!(e.shared_set(), c.shared_set());
        }

        #[test]
        fn flap_pair_independence_equivalence(h in arb_graph(7), d in 0usize..3) {
            let flaps = enumerate_flaps(&h, d).unwrap();
            for x in &flaps {
                let sx = Separation::from_flap(&h, x);
                prop_assert!(sx.is_separation_of(&h));
                for y in &flaps {
                    if x == y { continue; }
                    let sy = Separation::from_flap(&h, y);
                    let independent = sx.a.is_subset(&sy.b) && sy.a.is_subset(&sx.b);
                    let disjoint_nonadjacent = x.is_disjoint(y) && h.boundary(x).is_disjoint(y);
                    prop_assert_eq!(independent, disjoint_nonadjacent);
                }
            }
        }
    }
}
