//! Minor, shallow-model and subdivision searches for small graphs.
//!
//! Minor models are found by assigning branch sets to the pattern vertices
//! in order of decreasing degree. Each branch set is a connected set of
//! unused host vertices, enumerated once each (smallest vertex first, then
//! extensions by larger vertices only), and must touch the branch sets of
//! all earlier pattern neighbours.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{mask_iter, Graph, VertexSet};

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
const MAX_VERTICES: usize = 64;

fn check_size(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::TooLarge {
            what,
            max: MAX_VERTICES,
            got: g.n(),
        });
    }
    Ok(())
}

struct ModelSearch<'a> {
    nb: Vec<u64>,
    m: &'a Graph,
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent in the pattern.
    back: Vec<Vec<usize>>,
    /// Number of later pattern neighbours per position.
    later: Vec<usize>,
    caps: Vec<usize>,
    sets: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl<'a> ModelSearch<'a> {
    fn new(g: &Graph, m: &'a Graph, caps_by_vertex: &[usize], budget: u64) -> Self {
        let h = m.n();
        let mut order: Vec<usize> = (0..h).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(m.degree(v)), v));
        // Prefer vertices adjacent to earlier ones, keeping high degree first.
        let mut placed: Vec<usize> = Vec::with_capacity(h);
        let mut remaining = order.clone();
        while !remaining.is_empty() {
            let idx = remaining
                .iter()
                .position(|&v| placed.iter().any(|&u| m.has_edge(u, v)))
                .unwrap_or(0);
            placed.push(remaining.remove(idx));
        }
        let order = placed;
        let mut pos = vec![0; h];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                m.neighbors(v)
                    .iter()
                    .map(|&u| pos[u])
                    .filter(|&j| j < i)
                    .collect()
            })
            .collect();
        let later = order
            .iter()
            .enumerate()
            .map(|(i, &v)| m.neighbors(v).iter().filter(|&&u| pos[u] > i).count())
            .collect();
        let caps = order.iter().map(|&v| caps_by_vertex[v]).collect();
        ModelSearch {
            nb: (0..g.n()).map(|v| g.neighbor_mask(v)).collect(),
            m,
            order,
            back,
            later,
            caps,
            sets: vec![0; h],
            nodes: 0,
            budget,
        }
    }

    fn closed_nb(&self, s: u64) -> u64 {
        mask_iter(s).fold(s, |acc, v| acc | self.nb[v])
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "minor search",
                limit: self.budget,
            });
        }
        Ok(())
    }

    fn run(&mut self, all: u64) -> Result<Option<Vec<u64>>> {
        if self.order.is_empty() {
            return Ok(Some(Vec::new()));
        }
        if (all.count_ones() as usize) < self.order.len() {
            return Ok(None);
        }
        if self.place(0, all)? {
            let mut by_vertex = vec![0u64; self.m.n()];
            for (i, &v) in self.order.iter().enumerate() {
                by_vertex[v] = self.sets[i];
            }
            return Ok(Some(by_vertex));
        }
        Ok(None)
    }

    /// Assigns a branch set to position `i` from the `free` host vertices.
    fn place(&mut self, i: usize, free: u64) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        if ((free.count_ones()) as usize) < self.order.len() - i {
            return Ok(false);
        }
        for root in mask_iter(free) {
            let allowed = free & !((1u64 << root) - 1);
            if self.grow(
                i,
                free,
                1u64 << root,
                self.nb[root] & allowed & !(1u64 << root),
                allowed,
            )? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Enumerates connected sets `sub` (root = lowest bit) inside `allowed`,
    /// extending by the vertices in `ext`; each set once.
    fn grow(&mut self, i: usize, free: u64, sub: u64, ext: u64, allowed: u64) -> Result<bool> {
        self.tick()?;
        if self.accepts(i, sub, free) {
            self.sets[i] = sub;
            if self.place(i + 1, free & !sub)? {
                return Ok(true);
            }
        }
        if sub.count_ones() as usize >= self.caps[i] {
            return Ok(false);
        }
        let closed = self.closed_nb(sub);
        let mut rest = ext;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let new_ext = rest | (self.nb[w] & allowed & !closed);
            if self.grow(i, free, sub | (1u64 << w), new_ext, allowed)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn accepts(&self, i: usize, sub: u64, free: u64) -> bool {
        let touch = mask_iter(sub).fold(0u64, |acc, v| acc | self.nb[v]);
        if !self.back[i].iter().all(|&j| touch & self.sets[j] != 0) {
            return false;
        }
        // Each later neighbour needs its own branch set next to this one.
        (touch & free & !sub).count_ones() as usize >= self.later[i]
    }
}

/// Reduces `g` without changing whether it has a minor of minimum degree
/// `min_deg`: isolated vertices go if `min_deg >= 1`, leaves if `>= 2`.
fn prune_low_degree(g: &Graph, min_deg: usize) -> Graph {
    if min_deg == 0 {
        return g.clone();
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let limit = min_deg.min(2);
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < limit).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] < limit {
                    stack.push(u);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    g.induced_subgraph(&keep)
}

/// Branch sets of an `m`-minor model in `g`, indexed by `m`'s vertices.
pub fn find_minor_model(g: &Graph, m: &Graph, budget: u64) -> Result<Option<Vec<VertexSet>>> {
    check_size(g, "minor search")?;
    if m.n() > g.n() || m.m() > g.m() {
        return Ok(None);
    }
    let caps = vec![usize::MAX; m.n()];
    let mut s = ModelSearch::new(g, m, &caps, budget);
    let all = full_mask(g.n());
    Ok(s.run(all)?.map(|sets| {
        sets.into_iter()
            .map(|mask| VertexSet::from_mask(g.n(), mask))
            .collect()
    }))
}

pub fn has_minor(g: &Graph, m: &Graph, budget: u64) -> Result<bool> {
    check_size(g, "minor search")?;
    if m.n() > g.n() || m.m() > g.m() {
        return Ok(false);
    }
    let min_deg = (0..m.n()).map(|v| m.degree(v)).min().unwrap_or(0);
    let reduced = prune_low_degree(g, min_deg);
    // A connected pattern lives inside one component.
    let parts: Vec<Graph> = if m.is_connected() && m.n() > 0 {
        reduced
            .components()
            .into_iter()
            .filter(|c| c.len() >= m.n())
            .map(|c| reduced.induced_subgraph(&c))
            .collect()
    } else {
        vec![reduced]
    };
    for part in parts {
        if m.m() > part.m() || m.n() > part.n() {
            continue;
        }
        if find_minor_model(&part, m, budget)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A `(p, q)`-model of a `K_{s,t}` minor: `s` branch sets of at most `p`
/// vertices and `t` of at most `q`, disjoint and connected, with an edge
/// between every set of the first kind and every set of the second.
pub fn has_shallow_kst_model(
    g: &Graph,
    s: usize,
    t: usize,
    p: usize,
    q: usize,
    budget: u64,
) -> Result<bool> {
    check_size(g, "shallow model search")?;
    let m = Graph::complete_bipartite(s, t);
    if m.n() > g.n() {
        return Ok(false);
    }
    let caps: Vec<usize> = (0..s + t).map(|v| if v < s { p } else { q }).collect();
    if caps.contains(&0) {
        return Ok(false);
    }
    let mut search = ModelSearch::new(g, &m, &caps, budget);
    Ok(search.run(full_mask(g.n()))?.is_some())
}

/// `h` (given by its vertex set) is `r`-adherent to `y`: disjoint from `y`
/// with at least `r` neighbours in it.
pub fn is_r_adherent(g: &Graph, h: &VertexSet, y: &VertexSet, r: usize) -> bool {
    h.is_disjoint(y) && g.boundary(h).intersection_count(y) >= r
}

/// Allowed numbers of subdivision vertices per pattern edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lengths {
    Any,
    Set(BTreeSet<usize>),
}

impl Lengths {
    pub fn of(values: &[usize]) -> Self {
        Lengths::Set(values.iter().copied().collect())
    }

    fn allows(&self, s: usize) -> bool {
        match self {
            Lengths::Any => true,
            Lengths::Set(set) => set.contains(&s),
        }
    }

    fn max(&self, n: usize) -> usize {
        match self {
            Lengths::Any => n,
            Lengths::Set(set) => set.iter().copied().max().unwrap_or(0).min(n),
        }
    }
}

/// Whether some subgraph of `g` is an `S`-subdivision of `m`: branch vertices
/// map injectively, and each pattern edge becomes a path whose number of
/// internal vertices lies in `lengths`, all paths internally disjoint.
pub fn has_subdivision(g: &Graph, m: &Graph, lengths: &Lengths, budget: u64) -> Result<bool> {
    check_size(g, "subdivision search")?;
    if m.n() > g.n() {
        return Ok(false);
    }
    let mut order: Vec<usize> = (0..m.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(m.degree(v)), v));
    let mut st = SubdivSearch {
        g,
        m,
        lengths,
        edges: m.edges().collect(),
        branch: vec![usize::MAX; m.n()],
        used: 0,
        nodes: 0,
        budget,
    };
    st.assign(&order, 0)
}

struct SubdivSearch<'a> {
    g: &'a Graph,
    m: &'a Graph,
    lengths: &'a Lengths,
    edges: Vec<(usize, usize)>,
    branch: Vec<usize>,
    used: u64,
    nodes: u64,
    budget: u64,
}

impl SubdivSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "subdivision search",
                limit: self.budget,
            });
        }
        Ok(())
    }

    fn assign(&mut self, order: &[usize], i: usize) -> Result<bool> {
        if i == order.len() {
            return self.route(0);
        }
        let v = order[i];
        for x in 0..self.g.n() {
            if self.used >> x & 1 == 1 || self.g.degree(x) < self.m.degree(v) {
                continue;
            }
            self.tick()?;
            self.branch[v] = x;
            self.used |= 1 << x;
            let ok = self.assign(order, i + 1)?;
            self.used &= !(1u64 << x);
            self.branch[v] = usize::MAX;
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Routes pattern edges `e..` as internally disjoint paths.
    fn route(&mut self, e: usize) -> Result<bool> {
        if e == self.edges.len() {
            return Ok(true);
        }
        let (a, b) = self.edges[e];
        let (x, y) = (self.branch[a], self.branch[b]);
        let max_inner = self.lengths.max(self.g.n());
        self.extend(e, x, y, 0, max_inner)
    }

    fn extend(
        &mut self,
        e: usize,
        cur: usize,
        target: usize,
        inner: usize,
        max_inner: usize,
    ) -> Result<bool> {
        self.tick()?;
        if self.g.has_edge(cur, target) && self.lengths.allows(inner) && self.route(e + 1)? {
            return Ok(true);
        }
        if inner >= max_inner {
            return Ok(false);
        }
        for &w in self.g.neighbors(cur) {
            if self.used >> w & 1 == 1 {
                continue;
            }
            self.used |= 1 << w;
            let ok = self.extend(e, w, target, inner + 1, max_inner)?;
            self.used &= !(1u64 << w);
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = DEFAULT_NODE_BUDGET;

    #[test]
    fn minors() {
        assert!(has_minor(&Graph::complete(5), &Graph::complete(4), B).unwrap());
        assert!(has_minor(&Graph::petersen(), &Graph::complete(5), B).unwrap());
        assert!(!has_minor(&Graph::complete(4), &Graph::complete(5), B).unwrap());
        assert!(has_minor(&Graph::complete_bipartite(2, 3), &Graph::cycle(4), B).unwrap());
        assert!(!has_minor(&Graph::path(8), &Graph::cycle(3), B).unwrap());
        // Octahedron is planar: no K5 and no K3,3 minor.
        let oct = Graph::build(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
            ],
        )
        .unwrap();
        assert!(!has_minor(&oct, &Graph::complete(5), B).unwrap());
        assert!(!has_minor(&oct, &Graph::complete_bipartite(3, 3), B).unwrap());
        assert!(has_minor(&Graph::petersen(), &Graph::complete_bipartite(3, 3), B).unwrap());
    }

    #[test]
    fn model_is_valid() {
        let g = Graph::petersen();
        let m = Graph::complete(5);
        let model = find_minor_model(&g, &m, B).unwrap().unwrap();
        for (i, a) in model.iter().enumerate() {
            assert_eq!(g.components_within(a).len(), 1);
            for b in &model[..i] {
                assert!(a.is_disjoint(b));
                assert!(!g.boundary(a).is_disjoint(b));
            }
        }
    }

    #[test]
    fn shallow_models() {
        let k24 = Graph::complete_bipartite(2, 4);
        assert!(has_shallow_kst_model(&k24, 2, 4, 1, 1, B).unwrap());
        assert!(!has_shallow_kst_model(&Graph::path(7), 2, 2, 3, 3, B).unwrap());
        assert!(has_shallow_kst_model(&Graph::cycle(6), 1, 2, 1, 2, B).unwrap());
        // C6 has no K2,2 model with singleton branch sets but has one with pairs.
        assert!(!has_shallow_kst_model(&Graph::cycle(6), 2, 2, 1, 1, B).unwrap());
        assert!(has_shallow_kst_model(&Graph::cycle(6), 2, 2, 1, 2, B).unwrap());
    }

    #[test]
    fn subdivisions() {
        let k5 = Graph::complete(5);
        assert!(has_subdivision(&k5, &k5, &Lengths::of(&[0]), B).unwrap());
        assert!(has_subdivision(
            &Graph::petersen(),
            &Graph::complete_bipartite(3, 3),
            &Lengths::Any,
            B
        )
        .unwrap());
        assert!(!has_subdivision(&Graph::path(6), &Graph::cycle(3), &Lengths::Any, B).unwrap());
        assert!(
            has_subdivision(&Graph::cycle(6), &Graph::cycle(3), &Lengths::of(&[1]), B).unwrap()
        );
        assert!(
            !has_subdivision(&Graph::cycle(6), &Graph::cycle(3), &Lengths::of(&[0, 2]), B).unwrap()
        );
        // Petersen has no K5 subdivision (it is cubic).
        assert!(!has_subdivision(&Graph::petersen(), &k5, &Lengths::Any, B).unwrap());
    }

    #[test]
    fn adherence() {
        let g = Graph::star(4);
        let y = VertexSet::from_iter(5, [1, 2, 3]);
        assert!(is_r_adherent(&g, &VertexSet::from_iter(5, [0]), &y, 3));
        assert!(!is_r_adherent(&g, &VertexSet::from_iter(5, [0]), &y, 4));
        assert!(!is_r_adherent(&g, &VertexSet::from_iter(5, [0, 1]), &y, 1));
    }
}
