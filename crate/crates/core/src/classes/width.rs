//! Exact treewidth and pathwidth decisions by memoized search over vertex
//! subsets, for graphs on at most 64 vertices.
//!
//! Treewidth: `tw(G) <= t` iff some elimination order eliminates every vertex
//! `v` with `|Q(S, v)| <= t`, where `S` is the set eliminated before `v` and
//! `Q(S, v)` the vertices outside `S ∪ {v}` reachable from `v` through `S`.
//! Pathwidth equals the vertex separation number: the least `t` such that
//! some order keeps `|{u in prefix : u has a neighbour outside}| <= t` for
//! every prefix.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{mask_iter, Graph};

pub const DEFAULT_STATE_BUDGET: u64 = 2_000_000;
const MAX_VERTICES: usize = 64;

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "width search",
            max: MAX_VERTICES,
            got: g.n(),
        });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbor_mask(v)).collect()
}

/// Components as vertex lists; widths are maxima over components.
fn component_graphs(g: &Graph) -> Vec<Graph> {
    g.components()
        .into_iter()
        .map(|c| g.induced_subgraph(&c))
        .collect()
}

struct Budget {
    left: u64,
    limit: u64,
}

impl Budget {
    fn spend(&mut self, what: &'static str) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded {
                what,
                limit: self.limit,
            });
        }
        self.left -= 1;
        Ok(())
    }
}

pub fn treewidth_at_most(g: &Graph, t: usize, budget: u64) -> Result<bool> {
    check_size(g)?;
    let mut b = Budget {
        left: budget,
        limit: budget,
    };
    for c in component_graphs(g) {
        if !tw_connected(&c, t, &mut b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tw_connected(g: &Graph, t: usize, budget: &mut Budget) -> Result<bool> {
    let n = g.n();
    if n <= t + 1 {
        return Ok(true);
    }
    // Necessary: at most t·n − t(t+1)/2 edges, and degeneracy at most t.
    if g.m() > t * n - t * (t + 1) / 2 || g.degeneracy().degeneracy > t {
        return Ok(false);
    }
    let nb = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut failed = HashSet::new();
    tw_search(&nb, all, 0, t, &mut failed, budget)
}

/// `Q(S, v)` as a mask.
fn q_set(nb: &[u64], s: u64, v: usize) -> u64 {
    let mut seen = 1u64 << v;
    let mut frontier = 1u64 << v;
    let mut reach = 0u64;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nb[x] & !seen;
        seen |= new;
        reach |= new & !s;
        frontier |= new & s;
    }
    reach
}

fn tw_search(
    nb: &[u64],
    all: u64,
    s: u64,
    t: usize,
    failed: &mut HashSet<u64>,
    budget: &mut Budget,
) -> Result<bool> {
    let rest = all & !s;
    if rest.count_ones() as usize <= t + 1 {
        return Ok(true);
    }
    if failed.contains(&s) {
        return Ok(false);
    }
    budget.spend("treewidth search")?;
    // A vertex whose Q-set is a clique in the eliminated graph and small
    // enough can be eliminated first without loss.
    let mut options = Vec::new();
    for v in mask_iter(rest) {
        let q = q_set(nb, s, v);
        if q.count_ones() as usize > t {
            continue;
        }
        let simplicial = mask_iter(q).all(|x| {
            let qx = q_set(nb, s, x) | (1u64 << x);
            q & !qx == 0
        });
        if simplicial {
            return tw_search(nb, all, s | (1 << v), t, failed, budget);
        }
        options.push(v);
    }
    for v in options {
        if tw_search(nb, all, s | (1 << v), t, failed, budget)? {
            return Ok(true);
        }
    }
    failed.insert(s);
    Ok(false)
}

pub fn pathwidth_at_most(g: &Graph, t: usize, budget: u64) -> Result<bool> {
    check_size(g)?;
    let mut b = Budget {
        left: budget,
        limit: budget,
    };
    for c in component_graphs(g) {
        if !pw_connected(&c, t, &mut b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pw_connected(g: &Graph, t: usize, budget: &mut Budget) -> Result<bool> {
    let n = g.n();
    if n <= t + 1 {
        return Ok(true);
    }
    if g.m() > t * n - t * (t + 1) / 2 || g.degeneracy().degeneracy > t {
        return Ok(false);
    }
    let nb = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut failed = HashSet::new();
    pw_search(&nb, all, 0, t, &mut failed, budget)
}

fn border(nb: &[u64], s: u64) -> u64 {
    mask_iter(s)
        .filter(|&v| nb[v] & !s != 0)
        .fold(0, |m, v| m | (1 << v))
}

fn pw_search(
    nb: &[u64],
    all: u64,
    mut s: u64,
    t: usize,
    failed: &mut HashSet<u64>,
    budget: &mut Budget,
) -> Result<bool> {
    // Vertices with no neighbour outside the prefix never enlarge the border.
    loop {
        let free = mask_iter(all & !s).find(|&v| nb[v] & !s & !(1 << v) == 0);
        match free {
            Some(v) => s |= 1 << v,
            None => break,
        }
    }
    if s == all {
        return Ok(true);
    }
    if failed.contains(&s) {
        return Ok(false);
    }
    budget.spend("pathwidth search")?;
    for v in mask_iter(all & !s) {
        let next = s | (1 << v);
        if border(nb, next).count_ones() as usize <= t
            && pw_search(nb, all, next, t, failed, budget)?
        {
            return Ok(true);
        }
    }
    failed.insert(s);
    Ok(false)
}

pub fn treewidth(g: &Graph, budget: u64) -> Result<usize> {
    let lower = g.degeneracy().degeneracy;
    (lower..=g.n().max(1))
        .find_map(|t| match treewidth_at_most(g, t, budget) {
            Ok(true) => Some(Ok(t)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .expect("treewidth is below n")
}

pub fn pathwidth(g: &Graph, budget: u64) -> Result<usize> {
    let lower = g.degeneracy().degeneracy;
    (lower..=g.n().max(1))
        .find_map(|t| match pathwidth_at_most(g, t, budget) {
            Ok(true) => Some(Ok(t)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .expect("pathwidth is below n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const B: u64 = DEFAULT_STATE_BUDGET;

    /// Oracle: pathwidth via all vertex orders (vertex separation).
    fn brute_pathwidth(g: &Graph) -> usize {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        fn permute(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut usize) {
            if k == perm.len() {
                let mut worst = 0;
                for i in 1..=perm.len() {
                    let prefix = &perm[..i];
                    let rest = &perm[i..];
                    let b = prefix
                        .iter()
                        .filter(|&&u| rest.iter().any(|&w| g.has_edge(u, w)))
                        .count();
                    worst = worst.max(b);
                }
                *best = (*best).min(worst);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(k + 1, perm, g, best);
                perm.swap(k, i);
            }
        }
        permute(0, &mut perm, g, &mut best);
        if n == 0 {
            0
        } else {
            best
        }
    }

    /// Oracle: treewidth as the minimum over elimination orders of the
    /// largest later-neighbourhood in the filled graph.
    fn brute_treewidth(g: &Graph) -> usize {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        fn permute(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut usize) {
            if k == perm.len() {
                let n = g.n();
                let mut adj: Vec<Vec<bool>> = (0..n)
                    .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
                    .collect();
                let mut done = vec![false; n];
                let mut worst = 0;
                for &v in perm.iter() {
                    let later: Vec<usize> = (0..n)
                        .filter(|&u| !done[u] && u != v && adj[v][u])
                        .collect();
                    worst = worst.max(later.len());
                    for &a in &later {
                        for &b in &later {
                            if a != b {
                                adj[a][b] = true;
                            }
                        }
                    }
                    done[v] = true;
                }
                *best = (*best).min(worst);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(k + 1, perm, g, best);
                perm.swap(k, i);
            }
        }
        permute(0, &mut perm, g, &mut best);
        if n == 0 {
            0
        } else {
            best
        }
    }

    #[test]
    fn known_widths() {
        for n in 1..=7 {
            assert_eq!(treewidth(&Graph::complete(n), B).unwrap(), n - 1);
        }
        for n in 2..=12 {
            assert_eq!(pathwidth(&Graph::path(n), B).unwrap(), 1);
        }
        assert_eq!(treewidth(&Graph::cycle(5), B).unwrap(), 2);
        assert!(treewidth_at_most(&Graph::cycle(5), 2, B).unwrap());
        assert!(!treewidth_at_most(&Graph::cycle(5), 1, B).unwrap());
        assert_eq!(treewidth(&Graph::petersen(), B).unwrap(), 4);
        assert_eq!(treewidth(&Graph::star(9), B).unwrap(), 1);
        // A complete binary tree of depth 3 has pathwidth 2.
        let edges: Vec<_> = (1..15).map(|v| ((v - 1) / 2, v)).collect();
        let t = Graph::build(15, &edges).unwrap();
        assert_eq!(treewidth(&t, B).unwrap(), 1);
        assert_eq!(pathwidth(&t, B).unwrap(), 2);
        // A long path of 40 vertices fits the search.
        assert_eq!(pathwidth(&Graph::path(40), B).unwrap(), 1);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(prop::bool::weighted(0.35), n * (n - 1) / 2).prop_map(
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
        fn widths_match_permutation_oracles(g in arb_graph(7)) {
            prop_assert_eq!(treewidth(&g, B).unwrap(), brute_treewidth(&g));
            prop_assert_eq!(pathwidth(&g, B).unwrap(), brute_pathwidth(&g));
        }
    }
}
