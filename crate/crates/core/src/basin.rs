//! Basins of an ordered host and the independent collection a homomorphism
//! leaves behind when the host is swept in order.
//!
//! Positions are 1-based: `σ` maps the host's vertices onto `1..=n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::separations::{IndependentCollection, Separation};

/// A host graph with an ordering `σ` and a set `S_i` of later vertices for
/// every position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedHost {
    graph: Graph,
    /// `order[i - 1]` is the vertex at position `i`.
    order: Vec<usize>,
    position: Vec<usize>,
    s_seq: Vec<VertexSet>,
}

impl OrderedHost {
    /// `order` lists the vertices by position; `s_seq[i - 1]` is `S_i`.
    pub fn new(graph: Graph, order: Vec<usize>, s_seq: Vec<VertexSet>) -> Result<Self> {
        let n = graph.n();
        if order.len() != n || s_seq.len() != n {
            return Err(Error::Invalid(format!(
                "ordering of {} and sequence of {} entries for {n} vertices",
                order.len(),
                s_seq.len()
            )));
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if position[v] != 0 {
                return Err(Error::Invalid(format!(
                    "vertex {v} appears twice in the ordering"
                )));
            }
            position[v] = i + 1;
        }
        for (i, s) in s_seq.iter().enumerate() {
            if s.universe() != n {
                return Err(Error::Invalid(format!(
                    "S_{} lives on another vertex set",
                    i + 1
                )));
            }
            if let Some(u) = s.iter().find(|&u| position[u] <= i + 1) {
                return Err(Error::Invalid(format!(
                    "S_{} contains vertex {u} at position {}",
                    i + 1,
                    position[u]
                )));
            }
        }
        Ok(OrderedHost {
            graph,
            order,
            position,
            s_seq,
        })
    }

    /// The given ordering with every `S_i` empty.
    pub fn with_order(graph: Graph, order: Vec<usize>) -> Result<Self> {
        let n = graph.n();
        OrderedHost::new(graph, order, vec![VertexSet::new(n); n])
    }

    /// Identity ordering, every `S_i` empty.
    pub fn identity(graph: Graph) -> Self {
        let n = graph.n();
        OrderedHost::with_order(graph, (0..n).collect()).expect("identity ordering is valid")
    }

    /// A degeneracy ordering with `S_i` the later neighbours of the vertex at `i`.
    pub fn degeneracy(graph: Graph) -> Self {
        let order = graph.degeneracy().order;
        let n = graph.n();
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i + 1;
        }
        let s_seq = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                VertexSet::from_iter(
                    n,
                    graph
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&u| position[u] > i + 1),
                )
            })
            .collect();
        OrderedHost::new(graph, order, s_seq).expect("degeneracy ordering is valid")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `σ(v)`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// `σ⁻¹(i)`.
    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i - 1]
    }

    /// `S_i`.
    pub fn s(&self, i: usize) -> &VertexSet {
        &self.s_seq[i - 1]
    }

    pub fn max_s(&self) -> usize {
        self.s_seq.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(Error::Invalid(format!(
                "position {i} outside 1..={}",
                self.n()
            )));
        }
        Ok(())
    }
}

/// The `p`-basin at `i`: vertices reachable from `σ⁻¹(i)` by a path of length
/// at most `p` in `G[σ ≥ i] − S_i`.
pub fn basin(host: &OrderedHost, p: usize, i: usize) -> Result<VertexSet> {
    host.check_index(i)?;
    let n = host.n();
    let allowed = VertexSet::from_iter(
        n,
        (0..n).filter(|&u| host.position(u) >= i && !host.s(i).contains(u)),
    );
    Ok(host
        .graph
        .ball_within(host.vertex_at(i), p as i64, &allowed))
}

/// The collection extracted from one homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub collection: IndependentCollection,
    /// `iota[j]`: the position assigned to member `j`.
    pub iota: Vec<usize>,
    /// Positions whose vertex was hit while sweeping (the set `Z`).
    pub pivots: Vec<usize>,
}

fn check_homomorphism(h: &Graph, g: &Graph, phi: &[usize]) -> Result<()> {
    if phi.len() != h.n() {
        return Err(Error::Invalid(format!(
            "map has {} entries for a pattern on {} vertices",
            phi.len(),
            h.n()
        )));
    }
    if let Some(&v) = phi.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| !g.has_edge(phi[u], phi[v])) {
        return Err(Error::NotHomomorphism(u, v));
    }
    Ok(())
}

/// Sweeps the host in order. At the position `i` of a vertex hit by the
/// remaining part of `H`, the components of that part minus `φ⁻¹(S_i)`
/// meeting `φ⁻¹(σ⁻¹(i))` are peeled off; `i` is admitted when their image
/// avoids every `S_j` of an earlier hit position `j`. Each admitted position
/// contributes `(N[Q], V(H) − Q)` for the union `Q` of its peeled components.
pub fn extract_collection(h: &Graph, host: &OrderedHost, phi: &[usize]) -> Result<Extraction> {
    extract_with_tail(h, host, phi, 0)
}

/// As [`extract_collection`], never admitting the last `tail` positions.
fn extract_with_tail(
    h: &Graph,
    host: &OrderedHost,
    phi: &[usize],
    tail: usize,
) -> Result<Extraction> {
    let g = &host.graph;
    check_homomorphism(h, g, phi)?;
    let n = g.n();
    let mut alive = h.vertex_set();
    let mut earlier_s = VertexSet::new(n);
    let mut members = Vec::new();
    let mut iota = Vec::new();
    let mut pivots = Vec::new();
    for i in 1..=n {
        if alive.is_empty() {
            break;
        }
        let v = host.vertex_at(i);
        let hit: Vec<usize> = alive.iter().filter(|&u| phi[u] == v).collect();
        if hit.is_empty() {
            continue;
        }
        pivots.push(i);
        let s_i = host.s(i);
        let within = VertexSet::from_iter(h.n(), alive.iter().filter(|&u| !s_i.contains(phi[u])));
        let mut peeled = VertexSet::new(h.n());
        for comp in h.components_within(&within) {
            if hit.iter().any(|&u| comp.contains(u)) {
                peeled.union_with(&comp);
            }
        }
        alive = alive.difference(&peeled);
        let admitted = i + tail <= n && peeled.iter().all(|u| !earlier_s.contains(phi[u]));
        earlier_s.union_with(s_i);
        if admitted {
            members.push(Separation::from_flap(h, &peeled));
            iota.push(i);
        }
    }
    Ok(Extraction {
        collection: IndependentCollection::new(h.clone(), members),
        iota,
        pivots,
    })
}

/// Checks an extraction against what the sweep guarantees: a valid
/// collection, an injective `ι` into `1..=n`, and for every member `(X, Y)`
/// with `i = ι(X, Y)` and `B_i` the `(h − 1)`-basin:
/// (a) `σ⁻¹(i) ∈ φ(X − Y) ⊆ B_i`; (b) `φ(X ∩ Y) ⊆ S_i`; (c) every
/// component of `H[X − Y]` meets `φ⁻¹(σ⁻¹(i))`; (d) every vertex of `X ∩ Y`
/// has a neighbour in `X − Y`.
pub fn check_extraction(
    h: &Graph,
    host: &OrderedHost,
    phi: &[usize],
    ex: &Extraction,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Invalid(msg));
    if let Some(msg) = ex.collection.validation_error() {
        return fail(msg);
    }
    if ex.iota.len() != ex.collection.len() {
        return fail("ι does not cover the collection".into());
    }
    let mut sorted = ex.iota.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ex.iota.len() || sorted.iter().any(|&i| i == 0 || i > host.n()) {
        return fail(format!(
            "ι = {:?} is not an injection into 1..={}",
            ex.iota,
            host.n()
        ));
    }
    let p = h.n().saturating_sub(1);
    for (s, &i) in ex.collection.members().iter().zip(&ex.iota) {
        let v = host.vertex_at(i);
        let flap = s.flap();
        let b_i = basin(host, p, i)?;
        if !flap.iter().any(|u| phi[u] == v) {
            return fail(format!("(a) fails at {i}: pivot not in φ(X − Y)"));
        }
        if !flap.iter().all(|u| b_i.contains(phi[u])) {
            return fail(format!("(a) fails at {i}: φ(X − Y) leaves the basin"));
        }
        let boundary = s.boundary();
        if !boundary.iter().all(|u| host.s(i).contains(phi[u])) {
            return fail(format!("(b) fails at {i}"));
        }
        if !h
            .components_within(&flap)
            .iter()
            .all(|c| c.iter().any(|u| phi[u] == v))
        {
            return fail(format!("(c) fails at {i}"));
        }
        if !boundary
            .iter()
            .all(|u| !h.neighbor_set(u).is_disjoint(&flap))
        {
            return fail(format!("(d) fails at {i}"));
        }
    }
    Ok(())
}

/// `c(k, h, 0) = (h (k + h)^(2h − 1))^h`, saturating.
pub fn container_constant(k: usize, h: usize) -> u128 {
    let c1 = (h as u128).saturating_mul(pow_sat((k + h) as u128, (2 * h).saturating_sub(1)));
    pow_sat(c1, h)
}

fn pow_sat(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainerReport {
    /// `max |𝓛_φ|` over the family (0 for an empty family).
    pub t: usize,
    /// A map attaining `t`.
    pub witness: Option<Vec<usize>>,
    pub family_size: u64,
    /// `c(k, h, 0) · b^h · n^t`, saturating at `u128::MAX`.
    pub bound: u128,
    pub holds: bool,
    pub b: usize,
    pub k: usize,
}

/// Checks `|Φ| <= c(k, h, 0) · b^h · n^t` with `t` the largest extracted
/// collection. `b` defaults to the largest `p`-basin and `k` to the largest
/// `S_i`; supplied values are checked against the host.
pub fn container_bound_check(
    h: &Graph,
    host: &OrderedHost,
    p: usize,
    phis: &[Vec<usize>],
    b: Option<usize>,
    k: Option<usize>,
) -> Result<ContainerReport> {
    let n = host.n();
    let mut largest = 0;
    for i in 1..=n {
        let size = basin(host, p, i)?.len();
        if let Some(bound) = b {
            if size > bound {
                return Err(Error::BasinBound {
                    index: i,
                    size,
                    bound,
                });
            }
        }
        largest = largest.max(size);
    }
    let b = b.unwrap_or(largest.max(1));
    let k = match k {
        Some(k) if host.max_s() > k => {
            return Err(Error::Invalid(format!(
                "some S_i has more than {k} vertices"
            )))
        }
        Some(k) => k,
        None => host.max_s(),
    };
    let sizes: Vec<usize> = phis
        .par_iter()
        .map(|phi| extract_collection(h, host, phi).map(|e| e.collection.len()))
        .collect::<Result<_>>()?;
    let (t, witness) = match sizes
        .iter()
        .enumerate()
        .max_by_key(|&(i, &s)| (s, std::cmp::Reverse(i)))
    {
        Some((i, &s)) => (s, Some(phis[i].clone())),
        None => (0, None),
    };
    let bound = container_constant(k, h.n())
        .saturating_mul(pow_sat(b as u128, h.n()))
        .saturating_mul(pow_sat(n as u128, t));
    Ok(ContainerReport {
        t,
        witness,
        family_size: phis.len() as u64,
        bound,
        holds: (phis.len() as u128) <= bound,
        b,
        k,
    })
}
