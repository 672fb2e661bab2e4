//! Exact counting of homomorphisms, embeddings and induced embeddings by
//! backtracking.
//!
//! Pattern vertices are placed so that each one (when possible) has an
//! already placed neighbour; its candidates are then the intersection of the
//! host neighbourhoods of the placed neighbours' images. Host neighbourhoods
//! are packed `u64` words, so intersections cost `n/64` word operations.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Which quantity a growth exponent refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Homomorphism,
    Subgraph,
    Induced,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Homomorphism => "homomorphism",
            CountMode::Subgraph => "subgraph",
            CountMode::Induced => "induced",
        })
    }
}

impl FromStr for CountMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hom" | "homomorphism" => Ok(CountMode::Homomorphism),
            "subgraph" => Ok(CountMode::Subgraph),
            "induced" => Ok(CountMode::Induced),
            _ => Err(Error::Parse(format!("unknown count mode {s:?}"))),
        }
    }
}

/// The kind of vertex map being enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Injective,
    /// Injective, preserving both adjacency and non-adjacency.
    Induced,
}

/// Counting oracle with an explicit budget on explored partial maps.
#[derive(Clone, Copy, Debug)]
pub struct Counter {
    pub budget: u64,
    pub parallel: bool,
}

impl Default for Counter {
    fn default() -> Self {
        Counter {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

impl Counter {
    pub fn new(budget: u64) -> Self {
        Counter {
            budget,
            ..Counter::default()
        }
    }

    pub fn homomorphisms(&self, h: &Graph, g: &Graph) -> Result<u64> {
        self.maps(h, g, MapKind::Homomorphism)
    }

    pub fn injective(&self, h: &Graph, g: &Graph) -> Result<u64> {
        self.maps(h, g, MapKind::Injective)
    }

    pub fn induced_embeddings(&self, h: &Graph, g: &Graph) -> Result<u64> {
        self.maps(h, g, MapKind::Induced)
    }

    pub fn automorphisms(&self, h: &Graph) -> Result<u64> {
        self.maps(h, h, MapKind::Injective)
    }

    pub fn subgraph_copies(&self, h: &Graph, g: &Graph) -> Result<u64> {
        let inj = self.injective(h, g)?;
        let aut = self.automorphisms(h)?;
        assert_eq!(
            inj % aut,
            0,
            "embedding count {inj} not divisible by |Aut| = {aut}"
        );
        Ok(inj / aut)
    }

    pub fn induced_copies(&self, h: &Graph, g: &Graph) -> Result<u64> {
        let emb = self.induced_embeddings(h, g)?;
        let aut = self.automorphisms(h)?;
        assert_eq!(
            emb % aut,
            0,
            "embedding count {emb} not divisible by |Aut| = {aut}"
        );
        Ok(emb / aut)
    }

    /// `hom` counts maps; the other two modes count unlabelled copies.
    pub fn count(&self, mode: CountMode, h: &Graph, g: &Graph) -> Result<u64> {
        match mode {
            CountMode::Homomorphism => self.homomorphisms(h, g),
            CountMode::Subgraph => self.subgraph_copies(h, g),
            CountMode::Induced => self.induced_copies(h, g),
        }
    }

    /// Number of maps of the given kind.
    pub fn maps(&self, h: &Graph, g: &Graph, kind: MapKind) -> Result<u64> {
        let plan = Plan::new(h);
        let host = Host::new(g);
        let shared = AtomicU64::new(0);
        if h.n() == 0 {
            return Ok(1);
        }
        if self.parallel && h.n() >= 2 && g.n() >= 16 {
            return (0..g.n())
                .into_par_iter()
                .map(|v| {
                    let mut st = State::new(&plan, &host, kind, self.budget, &shared);
                    st.place(0, v)?;
                    st.go(1, &mut Sink::Count)?;
                    st.flush()?;
                    Ok(st.count)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b));
        }
        let mut st = State::new(&plan, &host, kind, self.budget, &shared);
        st.go(0, &mut Sink::Count)?;
        st.flush()?;
        Ok(st.count)
    }

    /// Whether at least one map of the given kind exists.
    pub fn exists(&self, h: &Graph, g: &Graph, kind: MapKind) -> Result<bool> {
        let plan = Plan::new(h);
        let host = Host::new(g);
        let shared = AtomicU64::new(0);
        let mut st = State::new(&plan, &host, kind, self.budget, &shared);
        st.go(0, &mut Sink::Exists)?;
        Ok(st.count > 0)
    }

    /// Calls `f` with each map `phi` (indexed by pattern vertex) until it returns false.
    pub fn for_each_map<F: FnMut(&[usize]) -> bool>(
        &self,
        h: &Graph,
        g: &Graph,
        kind: MapKind,
        mut f: F,
    ) -> Result<()> {
        let plan = Plan::new(h);
        let host = Host::new(g);
        let shared = AtomicU64::new(0);
        let mut st = State::new(&plan, &host, kind, self.budget, &shared);
        st.go(0, &mut Sink::Each(&mut f))?;
        Ok(())
    }
}

pub fn count_homomorphisms(h: &Graph, g: &Graph) -> Result<u64> {
    Counter::default().homomorphisms(h, g)
}

pub fn count_injective(h: &Graph, g: &Graph) -> Result<u64> {
    Counter::default().injective(h, g)
}

pub fn count_subgraph_copies(h: &Graph, g: &Graph) -> Result<u64> {
    Counter::default().subgraph_copies(h, g)
}

pub fn count_induced_copies(h: &Graph, g: &Graph) -> Result<u64> {
    Counter::default().induced_copies(h, g)
}

pub fn automorphism_count(h: &Graph) -> u64 {
    // Aut(H) is bounded by |V(H)|! and the search never exceeds it by much.
    Counter::new(u64::MAX)
        .automorphisms(h)
        .expect("unbounded budget")
}

/// Whether `g` has a (possibly induced) subgraph isomorphic to `h`.
pub fn contains_subgraph(h: &Graph, g: &Graph, induced: bool) -> Result<bool> {
    let kind = if induced {
        MapKind::Induced
    } else {
        MapKind::Injective
    };
    Counter::default().exists(h, g, kind)
}

/// Placement order and, per position, the earlier positions adjacent and
/// non-adjacent to it.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    non_back: Vec<Vec<usize>>,
}

impl Plan {
    fn new(h: &Graph) -> Plan {
        let n = h.n();
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], h.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
            for &u in h.neighbors(next) {
                links[u] += 1;
            }
        }
        let mut back = vec![Vec::new(); n];
        let mut non_back = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..i {
                if h.has_edge(order[i], order[j]) {
                    back[i].push(j);
                } else {
                    non_back[i].push(j);
                }
            }
        }
        Plan {
            order,
            back,
            non_back,
        }
    }
}

struct Host {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    full: Vec<u64>,
}

impl Host {
    fn new(g: &Graph) -> Host {
        let n = g.n();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for v in 0..n {
            for &u in g.neighbors(v) {
                rows[v * words + u / 64] |= 1 << (u % 64);
            }
        }
        let mut full = vec![0u64; words];
        for v in 0..n {
            full[v / 64] |= 1 << (v % 64);
        }
        Host {
            n,
            words,
            rows,
            full,
        }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }
}

enum Sink<'f> {
    Count,
    Exists,
    Each(&'f mut dyn FnMut(&[usize]) -> bool),
}

const FLUSH_EVERY: u64 = 1 << 12;

struct State<'a> {
    plan: &'a Plan,
    host: &'a Host,
    kind: MapKind,
    img: Vec<usize>,
    used: Vec<u64>,
    cand: Vec<u64>,
    count: u64,
    local: u64,
    budget: u64,
    shared: &'a AtomicU64,
    stop: bool,
}

impl<'a> State<'a> {
    fn new(
        plan: &'a Plan,
        host: &'a Host,
        kind: MapKind,
        budget: u64,
        shared: &'a AtomicU64,
    ) -> Self {
        let h = plan.order.len();
        State {
            plan,
            host,
            kind,
            img: vec![0; h],
            used: vec![0; host.words],
            cand: vec![0; host.words * h.max(1)],
            count: 0,
            local: 0,
            budget,
            shared,
            stop: false,
        }
    }

    fn tick(&mut self, nodes: u64) -> Result<()> {
        self.local += nodes;
        if self.local >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.budget {
            return Err(Error::BudgetExceeded {
                what: "counting",
                limit: self.budget,
            });
        }
        Ok(())
    }

    fn place(&mut self, pos: usize, v: usize) -> Result<()> {
        self.img[pos] = v;
        self.used[v / 64] |= 1 << (v % 64);
        self.tick(1)
    }

    fn unplace(&mut self, v: usize) {
        self.used[v / 64] &= !(1 << (v % 64));
    }

    fn fill_candidates(&mut self, pos: usize) {
        let w = self.host.words;
        let (host, plan) = (self.host, self.plan);
        let slot = &mut self.cand[pos * w..(pos + 1) * w];
        slot.copy_from_slice(&host.full);
        for &p in &plan.back[pos] {
            for (c, r) in slot.iter_mut().zip(host.row(self.img[p])) {
                *c &= r;
            }
        }
        if self.kind != MapKind::Homomorphism {
            for (c, u) in slot.iter_mut().zip(&self.used) {
                *c &= !u;
            }
        }
        if self.kind == MapKind::Induced {
            for &p in &plan.non_back[pos] {
                for (c, r) in slot.iter_mut().zip(host.row(self.img[p])) {
                    *c &= !r;
                }
            }
        }
    }

    fn go(&mut self, pos: usize, sink: &mut Sink<'_>) -> Result<()> {
        let h = self.plan.order.len();
        if pos == h {
            match sink {
                Sink::Count => self.count += 1,
                Sink::Exists => {
                    self.count += 1;
                    self.stop = true;
                }
                Sink::Each(f) => {
                    let mut phi = vec![0; h];
                    for (i, &v) in self.plan.order.iter().enumerate() {
                        phi[v] = self.img[i];
                    }
                    self.count += 1;
                    if !f(&phi) {
                        self.stop = true;
                    }
                }
            }
            return Ok(());
        }
        if self.host.n == 0 {
            return Ok(());
        }
        self.fill_candidates(pos);
        let w = self.host.words;
        if pos + 1 == h && matches!(sink, Sink::Count) {
            let c: u64 = self.cand[pos * w..(pos + 1) * w]
                .iter()
                .map(|x| x.count_ones() as u64)
                .sum();
            self.count += c;
            return self.tick(c);
        }
        for word in 0..w {
            let mut bits = self.cand[pos * w + word];
            while bits != 0 {
                let v = word * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.place(pos, v)?;
                self.go(pos + 1, sink)?;
                self.unplace(v);
                if self.stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// All maps `V(h) -> V(g)` by plain enumeration.
    fn brute(h: &Graph, g: &Graph, kind: MapKind) -> u64 {
        let (hn, gn) = (h.n(), g.n());
        if gn == 0 {
            return (hn == 0) as u64;
        }
        let mut phi = vec![0usize; hn];
        let mut total = 0;
        loop {
            let injective = (0..hn).all(|i| (0..i).all(|j| phi[i] != phi[j]));
            let ok = match kind {
                MapKind::Homomorphism => h.edges().all(|(u, v)| g.has_edge(phi[u], phi[v])),
                MapKind::Injective => {
                    injective && h.edges().all(|(u, v)| g.has_edge(phi[u], phi[v]))
                }
                MapKind::Induced => {
                    injective
                        && (0..hn)
                            .all(|i| (0..i).all(|j| h.has_edge(i, j) == g.has_edge(phi[i], phi[j])))
                }
            };
            total += ok as u64;
            let mut i = 0;
            loop {
                if i == hn {
                    return total;
                }
                phi[i] += 1;
                if phi[i] < gn {
                    break;
                }
                phi[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn small_examples() {
        let k4 = Graph::complete(4);
        let p3 = Graph::path(3);
        assert_eq!(count_homomorphisms(&Graph::empty(1), &k4).unwrap(), 4);
        assert_eq!(count_homomorphisms(&Graph::complete(2), &k4).unwrap(), 12);
        assert_eq!(
            count_homomorphisms(&Graph::cycle(4), &Graph::complete(2)).unwrap(),
            2
        );
        assert_eq!(count_injective(&Graph::complete(3), &k4).unwrap(), 24);
        assert_eq!(count_subgraph_copies(&Graph::complete(3), &k4).unwrap(), 4);
        assert_eq!(count_subgraph_copies(&p3, &Graph::star(4)).unwrap(), 6);
        assert_eq!(count_induced_copies(&p3, &Graph::complete(3)).unwrap(), 0);
        assert_eq!(count_induced_copies(&p3, &Graph::cycle(5)).unwrap(), 5);
        assert_eq!(automorphism_count(&k4), 24);
        assert_eq!(automorphism_count(&p3), 2);
        assert_eq!(automorphism_count(&Graph::petersen()), 120);
        assert_eq!(automorphism_count(&Graph::empty(0)), 1);
    }

    #[test]
    fn large_host_uses_parallel_path() {
        let g = Graph::cycle(40);
        let c = Counter::default();
        assert_eq!(c.homomorphisms(&Graph::complete(2), &g).unwrap(), 80);
        assert_eq!(c.subgraph_copies(&Graph::path(3), &g).unwrap(), 40);
        let seq = Counter {
            parallel: false,
            ..c
        };
        let h = Graph::path(4);
        assert_eq!(
            c.homomorphisms(&h, &g).unwrap(),
            seq.homomorphisms(&h, &g).unwrap()
        );
    }

    #[test]
    fn budget_is_enforced() {
        let err = Counter::new(1000)
            .homomorphisms(&Graph::empty(4), &Graph::empty(20))
            .unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn existence_and_enumeration() {
        let k4 = Graph::complete(4);
        assert!(contains_subgraph(&Graph::cycle(4), &k4, false).unwrap());
        assert!(!contains_subgraph(&Graph::cycle(4), &k4, true).unwrap());
        let mut maps = Vec::new();
        Counter::default()
            .for_each_map(
                &Graph::path(3),
                &Graph::path(3),
                MapKind::Injective,
                |phi| {
                    maps.push(phi.to_vec());
                    true
                },
            )
            .unwrap();
        maps.sort();
        assert_eq!(maps, vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
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
        #[test]
        fn matches_brute_force(h in arb_graph(4), g in arb_graph(6)) {
            let c = Counter::default();
            for kind in [MapKind::Homomorphism, MapKind::Injective, MapKind::Induced] {
                prop_assert_eq!(c.maps(&h, &g, kind).unwrap(), brute(&h, &g, kind));
            }
        }

        #[test]
        fn count_relations(h in arb_graph(4), g in arb_graph(7)) {
            let c = Counter::default();
            prop_assert!(c.injective(&h, &g).unwrap() <= c.homomorphisms(&h, &g).unwrap());
            prop_assert!(c.induced_copies(&h, &g).unwrap() <= c.subgraph_copies(&h, &g).unwrap());
        }

        #[test]
        fn hom_multiplicative(h1 in arb_graph(3), h2 in arb_graph(3), g in arb_graph(6)) {
            let c = Counter::default();
            let lhs = c.homomorphisms(&h1.disjoint_union(&h2), &g).unwrap();
            prop_assert_eq!(lhs, c.homomorphisms(&h1, &g).unwrap() * c.homomorphisms(&h2, &g).unwrap());
        }

        #[test]
        fn relabelling_invariant(h in arb_graph(4), g in arb_graph(6), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut ph: Vec<usize> = (0..h.n()).collect();
            let mut pg: Vec<usize> = (0..g.n()).collect();
            ph.shuffle(&mut rng);
            pg.shuffle(&mut rng);
            let c = Counter::default();
            for kind in [MapKind::Homomorphism, MapKind::Injective, MapKind::Induced] {
                prop_assert_eq!(
                    c.maps(&h, &g, kind).unwrap(),
                    c.maps(&h.relabel(&ph), &g.relabel(&pg), kind).unwrap()
                );
            }
        }
    }
}
