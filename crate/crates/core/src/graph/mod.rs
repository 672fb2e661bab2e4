//! Simple undirected graphs and the elementary quantities built on them.
//!
//! Vertices are `0..n`. Adjacency is kept twice: sorted neighbor lists for
//! iteration and bitset rows for constant-time membership and intersection.

mod canon;
mod io;
mod set;

use std::collections::VecDeque;
use std::fmt;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm};
pub use io::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
pub(crate) use set::mask_iter;
pub use set::VertexSet;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        g.finish();
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            rows: vec![VertexSet::new(n); n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        Graph::from_edges_unchecked(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges_unchecked(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges_unchecked(n, &edges)
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges_unchecked(leaves + 1, &edges)
    }

    /// `K_{s,t}` with sides `0..s` and `s..s+t`.
    pub fn complete_bipartite(s: usize, t: usize) -> Graph {
        let edges: Vec<_> = (0..s)
            .flat_map(|i| (s..s + t).map(move |j| (i, j)))
            .collect();
        Graph::from_edges_unchecked(s + t, &edges)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges_unchecked(10, &edges)
    }

    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g.finish();
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        if !self.rows[u].contains(v) {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.m += 1;
        }
    }

    fn finish(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    /// Neighborhood of `v` as a 64-bit mask; requires `n <= 64`.
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n() <= 64);
        self.adj[v].iter().fold(0u64, |m, &u| m | (1u64 << u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// The subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = index[u];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges_unchecked(vertices.len(), &edges)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges_unchecked(self.n(), &edges)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)))
            .collect();
        Graph::from_edges_unchecked(off + other.n(), &edges)
    }

    /// A copy with extra edges added (duplicates ignored).
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Graph {
        let edges: Vec<_> = self.edges().chain(extra.iter().copied()).collect();
        Graph::from_edges_unchecked(self.n(), &edges)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| !((a, b) == (u, v) || (a, b) == (v, u)))
            .collect();
        Graph::from_edges_unchecked(self.n(), &edges)
    }

    /// Adds a vertex adjacent to every existing vertex.
    pub fn with_apex(&self) -> Graph {
        let n = self.n();
        let edges: Vec<_> = self.edges().chain((0..n).map(|v| (v, n))).collect();
        Graph::from_edges_unchecked(n + 1, &edges)
    }

    pub fn isolated_vertex_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.degree(v) == 0).count()
    }

    /// `N^{<=l}[x]`: vertices within distance `l` of `x`. Empty for negative `l`.
    pub fn ball(&self, x: usize, radius: i64) -> VertexSet {
        self.ball_within(x, radius, &self.vertex_set())
    }

    /// Ball around `x` in the subgraph induced by `allowed` (which must contain `x`).
    pub fn ball_within(&self, x: usize, radius: i64, allowed: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n());
        if radius < 0 || !allowed.contains(x) {
            return seen;
        }
        seen.insert(x);
        let mut frontier = vec![x];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in &self.adj[v] {
                    if allowed.contains(u) && !seen.contains(u) {
                        seen.insert(u);
                        next.push(u);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// External neighborhood `N(S)`.
    pub fn boundary(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in s.iter() {
            out.union_with(&self.rows[v]);
        }
        out.difference_with(s);
        out
    }

    /// Closed neighborhood `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        self.boundary(s).union(s)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&self.vertex_set())
            .into_iter()
            .map(|c| c.to_vec())
            .collect()
    }

    /// Components of the subgraph induced by `within`, ordered by smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n());
        let mut out = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::new(self.n());
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &u in &self.adj[v] {
                    if within.contains(u) && !seen.contains(u) {
                        seen.insert(u);
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.components_within(&self.vertex_set()).len() == 1
    }

    pub fn distances_from(&self, x: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn radius(&self) -> Result<usize> {
        if self.n() == 0 || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok((0..self.n())
            .map(|v| {
                self.distances_from(v)
                    .into_iter()
                    .map(Option::unwrap)
                    .max()
                    .unwrap()
            })
            .min()
            .unwrap())
    }

    pub fn independence_number(&self) -> usize {
        self.maximum_independent_set_within(&self.vertex_set())
            .len()
    }

    /// `α_d`: largest independent set among vertices of degree at most `d`.
    pub fn alpha_d(&self, d: usize) -> usize {
        self.low_degree_independent_set(d).len()
    }

    /// A maximum independent set among vertices of degree at most `d`
    /// (degree measured in the whole graph).
    pub fn low_degree_independent_set(&self, d: usize) -> Vec<usize> {
        let cand = VertexSet::from_iter(self.n(), (0..self.n()).filter(|&v| self.degree(v) <= d));
        self.maximum_independent_set_within(&cand)
    }

    /// Exact maximum independent set of `G[cand]` by branch and bound.
    /// Ties are broken towards lexicographically smallest sets.
    pub fn maximum_independent_set_within(&self, cand: &VertexSet) -> Vec<usize> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.mis_branch(cand.clone(), &mut current, &mut best);
        best.sort_unstable();
        best
    }

    fn mis_branch(&self, cand: VertexSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if current.len() + cand.len() <= best.len() {
            return;
        }
        // Vertex with the most neighbors inside the candidate set.
        let pick = cand
            .iter()
            .map(|v| (self.rows[v].intersection_count(&cand), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((deg, v)) = pick else {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        };
        if deg == 0 {
            let before = current.len();
            current.extend(cand.iter());
            if current.len() > best.len() {
                *best = current.clone();
            }
            current.truncate(before);
            return;
        }
        let mut with = cand.difference(&self.rows[v]);
        with.remove(v);
        current.push(v);
        self.mis_branch(with, current, best);
        current.pop();
        let mut without = cand;
        without.remove(v);
        self.mis_branch(without, current, best);
    }

    /// Degeneracy and a min-degree peeling order (ties by smallest index).
    pub fn degeneracy(&self) -> Degeneracy {
        let n = self.n();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut d = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .unwrap();
            d = d.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for &u in &self.adj[v] {
                if !removed[u] {
                    deg[u] -= 1;
                }
            }
        }
        Degeneracy {
            degeneracy: d,
            order,
        }
    }

    pub fn is_degenerate(&self, d: usize) -> bool {
        self.degeneracy().degeneracy <= d
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components_within(&self.vertex_set()).len() == self.n()
    }

    /// Blocks (maximal 2-connected pieces, bridges and isolated vertices) and cut vertices.
    pub fn blocks(&self) -> BlockDecomposition {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut blocks = Vec::new();
        let mut timer = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if self.adj[root].is_empty() {
                disc[root] = timer;
                timer += 1;
                blocks.push(Block {
                    vertices: vec![root],
                    edges: Vec::new(),
                });
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if top.2 < self.adj[v].len() {
                    let u = self.adj[v][top.2];
                    top.2 += 1;
                    if u == parent {
                        continue;
                    }
                    if disc[u] == usize::MAX {
                        edge_stack.push((v, u));
                        disc[u] = timer;
                        low[u] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((u, v, 0));
                    } else if disc[u] < disc[v] {
                        edge_stack.push((v, u));
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                is_cut[p] = true;
                            }
                            let mut edges = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                edges.push((e.0.min(e.1), e.0.max(e.1)));
                                if e == (p, v) {
                                    break;
                                }
                            }
                            edges.sort_unstable();
                            let mut vertices: Vec<usize> =
                                edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                            vertices.sort_unstable();
                            vertices.dedup();
                            blocks.push(Block { vertices, edges });
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        let cut_vertices = VertexSet::from_iter(n, (0..n).filter(|&v| is_cut[v]));
        BlockDecomposition {
            blocks,
            cut_vertices,
        }
    }

    /// Number of blocks containing at most one cut vertex.
    pub fn end_block_count(&self) -> usize {
        let dec = self.blocks();
        dec.blocks
            .iter()
            .filter(|b| {
                b.vertices
                    .iter()
                    .filter(|&&v| dec.cut_vertices.contains(v))
                    .count()
                    <= 1
            })
            .count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    pub degeneracy: usize,
    /// `order[i]` is the vertex removed at step `i`.
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: VertexSet,
}

impl BlockDecomposition {
    pub fn is_end_block(&self, block: &Block) -> bool {
        block
            .vertices
            .iter()
            .filter(|&&v| self.cut_vertices.contains(v))
            .count()
            <= 1
    }
}
