//! Canonical labelling by individualization and refinement.
//!
//! The search tree individualizes vertices of the first non-singleton cell of
//! an equitable ordered partition. Each leaf is a labelling; the canonical one
//! has the lexicographically largest adjacency certificate. Automorphisms found
//! by equal leaf certificates prune children that lie in one orbit of the
//! pointwise stabilizer of the current prefix.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::Graph;

/// Isomorphism-invariant encoding: `n` and the upper adjacency triangle of the
/// canonically relabelled graph, column by column, packed most significant bit
/// first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges_unchecked(self.n, &edges)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", super::to_graph6(&self.to_graph()))
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&super::to_graph6(&self.to_graph()))
    }
}

/// `perm[v]` is the canonical label of `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    Search::run(g).1
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (bits, _) = Search::run(g);
    CanonicalForm { n: g.n(), bits }
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return false;
    }
    let mut d1 = g1.degree_sequence();
    let mut d2 = g2.degree_sequence();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && canonical_form(g1) == canonical_form(g2)
}

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every cell until the ordered
/// partition is equitable. Sub-cells are ordered by their count vectors, so
/// the result commutes with relabelling.
fn refine(g: &Graph, cells: &mut Cells) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = cells.len();
        let mut next: Cells = Vec::with_capacity(k);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for &u in g.neighbors(v) {
                        sig[cell_of[u]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == k;
        *cells = next;
        if stable {
            return;
        }
    }
}

fn certificate(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(inv[i], inv[j]) {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    bits
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn run(g: &'a Graph) -> (Vec<u64>, Vec<usize>) {
        let mut s = Search {
            g,
            first: None,
            best: None,
            autos: Vec::new(),
        };
        let mut cells: Cells = if g.n() == 0 {
            Vec::new()
        } else {
            vec![(0..g.n()).collect()]
        };
        refine(g, &mut cells);
        s.descend(cells, &mut Vec::new());
        s.best.expect("search reaches at least one leaf")
    }

    fn descend(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !tried.is_empty() && self.same_orbit(prefix, &tried, v) {
                continue;
            }
            let mut child: Cells = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            refine(self.g, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            tried.push(v);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let mut perm = vec![0usize; self.g.n()];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let cert = certificate(self.g, &perm);
        for (c, p) in [&self.first, &self.best].into_iter().flatten() {
            if *c == cert {
                // perm and p produce the same graph: p^-1 . perm is an automorphism.
                let mut inv = vec![0usize; p.len()];
                for (v, &x) in p.iter().enumerate() {
                    inv[x] = v;
                }
                let auto: Vec<usize> = perm.iter().map(|&x| inv[x]).collect();
                if auto.iter().enumerate().any(|(i, &x)| i != x) {
                    self.autos.push(auto);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((cert.clone(), perm.clone()));
        }
        let better = match &self.best {
            None => true,
            Some((c, _)) => cert.cmp(c) == Ordering::Greater,
        };
        if better {
            self.best = Some((cert, perm));
        }
    }

    /// Whether `v` shares an orbit with a tried vertex under the known
    /// automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] == p) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}
