//! Planarity by path addition (Demoucron, Malgrange and Pertuiset), run on
//! each biconnected block.
//!
//! A partial embedding of a 2-connected block is kept as its list of faces,
//! each a cyclic vertex sequence. Every round computes the fragments of the
//! block relative to the embedded part (chords, and components of the rest
//! with their attachment vertices), picks a fragment with the fewest faces
//! containing all of its attachments, and embeds one path of it into such a
//! face. A fragment with no admissible face means the block is not planar.

use crate::graph::{Graph, VertexSet};

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n <= 4 {
        return true;
    }
    if g.m() > 3 * n - 6 {
        return false;
    }
    g.blocks().blocks.iter().all(|b| {
        if b.vertices.len() <= 4 {
            return true;
        }
        let sub = g.induced_subgraph(&b.vertices);
        block_is_planar(&sub)
    })
}

/// Outerplanar iff adding a vertex adjacent to everything keeps it planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.n();
    // An outerplanar graph on n >= 2 vertices has at most 2n - 3 edges.
    if n >= 2 && g.m() > 2 * n - 3 {
        return false;
    }
    is_planar(&g.with_apex())
}

fn block_is_planar(b: &Graph) -> bool {
    let n = b.n();
    let m = b.m();
    if m > 3 * n - 6 {
        return false;
    }
    let cycle = find_cycle(b);
    let mut in_emb = VertexSet::from_iter(n, cycle.iter().copied());
    let mut emb_edge = vec![VertexSet::new(n); n];
    let mut embedded_edges = 0;
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_edge[u].insert(v);
        emb_edge[v].insert(u);
        embedded_edges += 1;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while embedded_edges < m {
        let fragments = fragments(b, &in_emb, &emb_edge);
        let mut choice: Option<(usize, usize)> = None;
        let mut best_count = usize::MAX;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return false;
            }
            if admissible.len() < best_count {
                best_count = admissible.len();
                choice = Some((fi, admissible[0]));
                if best_count == 1 {
                    break;
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges imply a fragment");
        let path = fragment_path(b, &fragments[fi], &in_emb);
        for w in path.windows(2) {
            emb_edge[w[0]].insert(w[1]);
            emb_edge[w[1]].insert(w[0]);
            embedded_edges += 1;
        }
        for &v in &path {
            in_emb.insert(v);
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    true
}

struct Fragment {
    /// Non-embedded vertices of the fragment (empty for a chord).
    inner: Vec<usize>,
    attachments: Vec<usize>,
}

fn fragments(b: &Graph, in_emb: &VertexSet, emb_edge: &[VertexSet]) -> Vec<Fragment> {
    let n = b.n();
    let mut out = Vec::new();
    for (u, v) in b.edges() {
        if in_emb.contains(u) && in_emb.contains(v) && !emb_edge[u].contains(v) {
            out.push(Fragment {
                inner: Vec::new(),
                attachments: vec![u, v],
            });
        }
    }
    let rest = VertexSet::full(n).difference(in_emb);
    for comp in b.components_within(&rest) {
        let attachments = b.boundary(&comp).to_vec();
        out.push(Fragment {
            inner: comp.to_vec(),
            attachments,
        });
    }
    out
}

/// A path between two distinct attachments through the fragment.
fn fragment_path(b: &Graph, frag: &Fragment, in_emb: &VertexSet) -> Vec<usize> {
    if frag.inner.is_empty() {
        return frag.attachments.clone();
    }
    let start = frag.attachments[0];
    let n = b.n();
    let inner = VertexSet::from_iter(n, frag.inner.iter().copied());
    // BFS from `start` into the fragment; stop at the first other attachment.
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &u in b.neighbors(start) {
        if inner.contains(u) && prev[u] == usize::MAX {
            prev[u] = start;
            queue.push_back(u);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in b.neighbors(x) {
            if y != start && in_emb.contains(y) {
                let mut path = vec![y, x];
                let mut cur = x;
                while prev[cur] != start {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if inner.contains(y) && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("a fragment of a 2-connected block has two attachments")
}

/// Splits a face (simple cycle) along a path joining two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], *path.last().expect("non-empty path"));
    let len = face.len();
    let ia = face
        .iter()
        .position(|&x| x == a)
        .expect("attachment on face");
    let ib = face
        .iter()
        .position(|&x| x == b)
        .expect("attachment on face");
    let walk = |from: usize, to: usize| -> Vec<usize> {
        let mut out = vec![face[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % len;
            out.push(face[i]);
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut f1 = walk(ia, ib);
    f1.extend(interior.iter().rev());
    let mut f2 = walk(ib, ia);
    f2.extend(interior.iter());
    (f1, f2)
}

/// A cycle through the first edge, found as a shortest path avoiding it.
fn find_cycle(b: &Graph) -> Vec<usize> {
    let (u, v) = b.edges().next().expect("block has an edge");
    let n = b.n();
    let mut prev = vec![usize::MAX; n];
    prev[v] = v;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in b.neighbors(x) {
            if x == v && y == u {
                continue;
            }
            if prev[y] == usize::MAX {
                prev[y] = x;
                if y == u {
                    let mut cyc = vec![u];
                    let mut cur = u;
                    while cur != v {
                        cur = prev[cur];
                        cyc.push(cur);
                    }
                    return cyc;
                }
                queue.push_back(y);
            }
        }
    }
    unreachable!("every edge of a 2-connected block lies on a cycle")
}
